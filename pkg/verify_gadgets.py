import argparse
import functools
import glob
import os
import time

from tqdm import tqdm

from tatami import SUPPORT_ENGINE
from tatami.gadgets.framework import check_table
from tatami.gadgets.gadget_file import load_gadget, save_gadget
from tatami.gadgets.tatami_gadgets import shipped_gadgets
from tatami.solver.searcher import SearchConfig
from tatami.spiral.gadgets import sg_fill_check, sg_gadgets
from tatami.utils.utils import add_arguments, print_arguments

parser = argparse.ArgumentParser(description=__doc__)
add_arg = functools.partial(add_arguments, argparser=parser)
add_arg('gadget_dir',   str,   'gadgets/',   '存放Tatamibari小工具文件的文件夹')
add_arg('engine',       str,   'sat',        '局部搜索使用的引擎', choices=SUPPORT_ENGINE)
add_arg('node_limit',   int,   10 ** 8,      '每次局部搜索的节点预算')
add_arg('write',        bool,  False,        '检查前先用生成器重写gadget_dir下的小工具文件')
add_arg('census',       bool,  False,        '是否同时枚举全部局部解并按轮廓计数，子句上很慢')
add_arg('spiral',       bool,  True,         '是否同时检查Spiral Galaxies小工具和填充')
add_arg('moat',         int,   2,            'Spiral Galaxies填充检查时小工具四周的空白宽度')
args = parser.parse_args()
print_arguments(args)

if args.write:
    for name, g, table in shipped_gadgets():
        save_gadget(os.path.join(args.gadget_dir, name), g, table)

cfg = SearchConfig(engine=args.engine, node_limit=args.node_limit)
start = time.time()
failed = []
for path in tqdm(sorted(glob.glob(os.path.join(args.gadget_dir, '*.gadget')))):
    g, table = load_gadget(path)
    report = check_table(g, table, cfg, strict_improper=True, census=args.census)
    print('\n'.join(report.lines()))
    if not report.passed:
        failed.append(g.name)
if args.spiral:
    for g, table in sg_gadgets():
        report = check_table(g, table, cfg, strict_improper=False)
        print('\n'.join(report.lines()))
        fill = sg_fill_check(g, moat=args.moat, cfg=cfg)
        print('\n'.join(fill.lines()))
        if not (report.passed and fill.passed):
            failed.append(g.name)
print(f'检查消耗时间：{int(time.time() - start)}s，失败：{failed if failed else "无"}')
