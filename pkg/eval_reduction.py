import argparse
import functools
import time
from multiprocessing import Pool

from tqdm import tqdm

from tatami import SUPPORT_ENGINE
from tatami.errors import NonPlanarLayout
from tatami.reducer.config import ReducerConfig
from tatami.reducer.family import monotone_family
from tatami.reducer.reduce import SIZE_CONSTANT, reduce_instance, size_ratio
from tatami.reducer.sat_instance import brute_force_sat, format_sat
from tatami.solver.searcher import is_solvable
from tatami.utils.utils import add_arguments, print_arguments

parser = argparse.ArgumentParser(description=__doc__)
add_arg = functools.partial(add_arguments, argparser=parser)
add_arg('max_vars',     int,   3,                    '实例族的最大变量数')
add_arg('max_clauses',  int,   2,                    '实例族的最大子句数，只支持1或2')
add_arg('engine',       str,   'sat',                '判定谜题可解性的引擎', choices=SUPPORT_ENGINE)
add_arg('node_limit',   int,   None,                 '每个谜题的搜索节点预算')
add_arg('num_workers',  int,   4,                    '并行评估的进程数量')
add_arg('start',        int,   0,                    '从实例族的第几个实例开始')
add_arg('limit',        int,   -1,                   '最多评估多少个实例，-1为全部')
add_arg('config',       str,   'conf/reducer.json',  '归约几何参数的json文件')
args = parser.parse_args()
print_arguments(args)


def evaluate(item):
    index, inst = item
    try:
        result = reduce_instance(inst, cfg)
    except NonPlanarLayout:
        return index, 'skip', None, None
    sat = brute_force_sat(inst)
    solvable = is_solvable(result.puzzle, engine=args.engine, node_limit=args.node_limit)
    if not result.audit.passed:
        return index, 'audit', sat, size_ratio(inst, result.puzzle)
    return index, 'ok' if sat == solvable else 'mismatch', sat, size_ratio(inst, result.puzzle)


cfg = ReducerConfig.from_json(args.config)
family = list(enumerate(monotone_family(args.max_vars, args.max_clauses)))[args.start:]
if args.limit >= 0:
    family = family[:args.limit]


if __name__ == '__main__':
    start = time.time()
    results = []
    with Pool(args.num_workers) as pool:
        for res in tqdm(pool.imap_unordered(evaluate, family), total=len(family)):
            results.append(res)
    results.sort()
    instances = dict(family)
    bad = [r for r in results if r[1] in ('mismatch', 'audit')]
    for index, status, sat, ratio in bad:
        print(f'{status} #{index} sat={sat} ratio={ratio:.1f}\n{format_sat(instances[index])}')
    ratios = [r[3] for r in results if r[3] is not None]
    print(f'评估消耗时间：{int(time.time() - start)}s，实例{len(results)}个，'
          f'跳过{sum(r[1] == "skip" for r in results)}个，错误{len(bad)}个，'
          f'最大尺寸比{max(ratios, default=0):.1f}（上界{SIZE_CONSTANT}）')
