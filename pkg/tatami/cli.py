import argparse
import functools
import sys

from tatami import SUPPORT_ENGINE
from tatami.errors import TatamiError
from tatami.gadgets.framework import DEFAULT_CONFIG, check_table
from tatami.gadgets.gadget_file import read_gadget
from tatami.grid.reader import format_puzzle, format_solutions, read_puzzle, read_solution
from tatami.reducer.config import ReducerConfig
from tatami.reducer.reduce import reduce_instance
from tatami.reducer.sat_instance import brute_force_sat, parse_sat
from tatami.render import SUPPORT_FORMAT, RenderSpec, render
from tatami.solver.searcher import SearchConfig, SearchStatus, solve
from tatami.spiral.puzzle import SGPuzzle, format_sg_solution, read_sg_puzzle, read_sg_solution, sg_validate
from tatami.spiral.solver import sg_solve
from tatami.utils.logger import set_level, setup_logger
from tatami.utils.utils import add_arguments, read_text, write_text
from tatami.validator import validate

logger = setup_logger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


class _Parser(argparse.ArgumentParser):
    """用法错误抛出异常而不是直接退出进程"""

    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _count_line(count, exact):
    return f'count {count} exact {"true" if exact else "false"}\n'


def _search_flags(sub, max_solutions):
    add_arg = functools.partial(add_arguments, argparser=sub)
    add_arg('max-solutions', int,  max_solutions, '找到这么多解后停止', dest='max_solutions')
    add_arg('node-limit',    int,  None,          '搜索节点预算，不设则不限', dest='node_limit')
    add_arg('engine',        str,  'backtrack',   '求解引擎', choices=SUPPORT_ENGINE)


def cmd_solve(args):
    """找到的解全部写出，最多max_solutions个"""
    p = read_puzzle(read_text(args.puzzle))
    outcome = solve(p, SearchConfig(max_solutions=args.max_solutions, node_limit=args.node_limit,
                                    engine=args.engine, keep=args.max_solutions))
    if outcome.status is SearchStatus.RESOURCE_EXHAUSTED and not outcome.count:
        print(f'error: 搜索预算耗尽，没有找到解', file=sys.stderr)
        return EXIT_ERROR
    if outcome.count:
        write_text(args.output, format_solutions(p, outcome.solutions))
    sys.stdout.write(_count_line(outcome.count, outcome.exact))
    return EXIT_OK if outcome.count else EXIT_NEGATIVE


def cmd_count(args):
    p = read_puzzle(read_text(args.puzzle))
    outcome = solve(p, SearchConfig(max_solutions=args.max_solutions, node_limit=args.node_limit,
                                    engine=args.engine, keep=0))
    sys.stdout.write(_count_line(outcome.count, outcome.exact))
    if outcome.status is SearchStatus.RESOURCE_EXHAUSTED:
        print('error: 搜索预算耗尽，计数不精确', file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK if outcome.count else EXIT_NEGATIVE


def cmd_verify(args):
    p = read_puzzle(read_text(args.puzzle))
    verdict = validate(p, read_solution(read_text(args.solution), p))
    sys.stdout.write(verdict.report())
    return EXIT_OK if verdict.ok else EXIT_NEGATIVE


def cmd_reduce(args):
    inst = parse_sat(read_text(args.sat))
    cfg = ReducerConfig.from_json(args.config) if args.config else ReducerConfig.default()
    result = reduce_instance(inst, cfg)
    write_text(args.output, format_puzzle(result.puzzle))
    if args.audit or not result.audit.passed:
        for line in result.audit.lines():
            print(line, file=sys.stderr)
    return EXIT_OK if result.audit.passed else EXIT_NEGATIVE


def cmd_gadget_check(args):
    cfg = SearchConfig(engine=args.engine, node_limit=args.node_limit)
    passed = True
    for path in args.gadgets:
        g, table = read_gadget(read_text(path))
        strict = not isinstance(g.puzzle, SGPuzzle)
        report = check_table(g, table, cfg, strict_improper=strict, census=args.census)
        sys.stdout.write(''.join(line + '\n' for line in report.lines()))
        passed = passed and report.passed
    return EXIT_OK if passed else EXIT_NEGATIVE


def cmd_render(args):
    p = read_puzzle(read_text(args.puzzle))
    s = read_solution(read_text(args.solution), p)
    write_text(args.output, render(p, s, RenderSpec(format=args.format)))
    return EXIT_OK


def cmd_sat_oracle(args):
    sat = brute_force_sat(parse_sat(read_text(args.sat)))
    print('sat' if sat else 'unsat')
    return EXIT_OK if sat else EXIT_NEGATIVE


def cmd_sg_solve(args):
    p = read_sg_puzzle(read_text(args.puzzle))
    outcome = sg_solve(p, cap=args.max_solutions, node_limit=args.node_limit)
    if outcome.status is SearchStatus.RESOURCE_EXHAUSTED and not outcome.count:
        print('error: 搜索预算耗尽，没有找到解', file=sys.stderr)
        return EXIT_ERROR
    if outcome.count:
        write_text(args.output, format_sg_solution(outcome.solutions[0]))
    sys.stdout.write(_count_line(outcome.count, outcome.exact))
    return EXIT_OK if outcome.count else EXIT_NEGATIVE


def cmd_sg_verify(args):
    p = read_sg_puzzle(read_text(args.puzzle))
    verdict = sg_validate(p, read_sg_solution(read_text(args.solution), p))
    sys.stdout.write(verdict.report())
    return EXIT_OK if verdict.ok else EXIT_NEGATIVE


def build_parser():
    parser = _Parser(prog='tatami', description='Tatamibari与Spiral Galaxies工具集')
    add_arguments('log-level', str, None, '日志级别，不设则取环境变量TATAMI_LOG_LEVEL', parser, dest='log_level',
                  choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    subs = parser.add_subparsers(dest='command', parser_class=_Parser)
    subs.required = True

    sub = subs.add_parser('solve', help='求解谜题，输出找到的解和解的个数')
    sub.add_argument('puzzle')
    _search_flags(sub, 1)
    sub.add_argument('-o', '--output', default=None, help='解的输出路径，默认标准输出')
    sub.set_defaults(func=cmd_solve)

    sub = subs.add_parser('count', help='统计解的个数')
    sub.add_argument('puzzle')
    _search_flags(sub, 2)
    sub.set_defaults(func=cmd_count)

    sub = subs.add_parser('verify', help='检查解是否合法')
    sub.add_argument('puzzle')
    sub.add_argument('solution')
    sub.set_defaults(func=cmd_verify)

    sub = subs.add_parser('reduce', help='把单调3SAT实例归约为Tatamibari谜题')
    sub.add_argument('sat')
    sub.add_argument('-o', '--output', default=None, help='谜题的输出路径，默认标准输出')
    add_arg = functools.partial(add_arguments, argparser=sub)
    add_arg('config',  str,   None,  '归约几何参数的json文件，不设则用内置默认值')
    add_arg('audit',   bool,  False, '把审计报告写到标准错误')
    sub.set_defaults(func=cmd_reduce)

    sub = subs.add_parser('gadget-check', help='穷举检查小工具文件中的轮廓表')
    sub.add_argument('gadgets', nargs='+')
    add_arg = functools.partial(add_arguments, argparser=sub)
    add_arg('node-limit', int, DEFAULT_CONFIG.node_limit, '每次局部搜索的节点预算', dest='node_limit')
    add_arg('engine',     str, DEFAULT_CONFIG.engine,     '求解引擎', choices=SUPPORT_ENGINE)
    add_arg('census',     bool, False,                    '另外枚举全部局部解并按轮廓计数')
    sub.set_defaults(func=cmd_gadget_check)

    sub = subs.add_parser('render', help='把合法解渲染为ASCII或SVG')
    sub.add_argument('puzzle')
    sub.add_argument('solution')
    sub.add_argument('-o', '--output', default=None, help='输出路径，默认标准输出')
    add_arg = functools.partial(add_arguments, argparser=sub)
    add_arg('format', str, 'ascii', '输出格式', choices=SUPPORT_FORMAT)
    sub.set_defaults(func=cmd_render)

    sub = subs.add_parser('sat-oracle', help='暴力判定单调3SAT实例是否可满足')
    sub.add_argument('sat')
    sub.set_defaults(func=cmd_sat_oracle)

    sub = subs.add_parser('sg-solve', help='求解Spiral Galaxies谜题')
    sub.add_argument('puzzle')
    add_arg = functools.partial(add_arguments, argparser=sub)
    add_arg('max-solutions', int, 1,    '找到这么多解后停止', dest='max_solutions')
    add_arg('node-limit',    int, None, '搜索节点预算，不设则不限', dest='node_limit')
    sub.add_argument('-o', '--output', default=None, help='解的输出路径，默认标准输出')
    sub.set_defaults(func=cmd_sg_solve)

    sub = subs.add_parser('sg-verify', help='检查Spiral Galaxies解是否合法')
    sub.add_argument('puzzle')
    sub.add_argument('solution')
    sub.set_defaults(func=cmd_sg_verify)
    return parser


def run(argv=None) -> int:
    """
    命令行入口
    :return: 0成功/合法/可解，1不合法/不可解/不一致，2用法错误、输入错误或预算耗尽
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.log_level:
            set_level(args.log_level)
        return args.func(args)
    except _UsageError as e:
        print(f'usage error: {e}', file=sys.stderr)
        return EXIT_ERROR
    except SystemExit as e:
        # --help
        return EXIT_OK if not e.code else EXIT_ERROR
    except (TatamiError, OSError) as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_ERROR


def main():
    sys.exit(run(sys.argv[1:]))
