import sys


def print_arguments(args, stream=sys.stdout):
    print("-----------  Configuration Arguments -----------", file=stream)
    for arg, value in sorted(vars(args).items()):
        print("%s: %s" % (arg, value), file=stream)
    print("------------------------------------------------", file=stream)


def strtobool(value):
    """命令行中的布尔值，y/yes/t/true/on/1 为真，n/no/f/false/off/0 为假"""
    value = str(value).lower()
    if value in ('y', 'yes', 't', 'true', 'on', '1'):
        return True
    if value in ('n', 'no', 'f', 'false', 'off', '0'):
        return False
    raise ValueError(f'无法解析布尔值：{value}')


def add_arguments(argname, type, default, help, argparser, **kwargs):
    type = strtobool if type == bool else type
    argparser.add_argument("--" + argname,
                           default=default,
                           type=type,
                           help=help + ' 默认: %(default)s.',
                           **kwargs)


def read_text(path):
    """`-` 表示标准输入"""
    if path == '-':
        return sys.stdin.read()
    with open(path, 'r', encoding='utf-8') as f:
        return f.read()


def write_text(path, text):
    """path为None或`-`时写到标准输出"""
    if path is None or path == '-':
        sys.stdout.write(text)
        return
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)
