# 项目支持的求解引擎
SUPPORT_ENGINE = ['backtrack',
                  'sat']

# 项目支持的谜题规则
SUPPORT_RULES = ['tatamibari',
                 'spiralgalaxies']
