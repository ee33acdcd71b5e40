from dataclasses import dataclass

import numpy as np

from tatami.errors import PreconditionError
from tatami.grid.puzzle import Puzzle, Shade, Solution
from tatami.validator import validate

# 支持的输出格式
SUPPORT_FORMAT = ['ascii', 'svg']

FILL = '▒'
H_EDGE = '─'
V_EDGE = '│'
# (上, 下, 左, 右) -> 交叉点字符
JUNCTIONS = {
    (True, True, True, True): '┼',
    (False, True, False, True): '┌',
    (False, True, True, False): '┐',
    (True, False, False, True): '└',
    (True, False, True, False): '┘',
    (True, True, False, True): '├',
    (True, True, True, False): '┤',
    (False, True, True, True): '┬',
    (True, False, True, True): '┴',
    (True, True, False, False): V_EDGE,
    (True, False, False, False): V_EDGE,
    (False, True, False, False): V_EDGE,
    (False, False, True, True): H_EDGE,
    (False, False, True, False): H_EDGE,
    (False, False, False, True): H_EDGE,
}

DARK_COLOR = '#333333'
LIGHT_COLOR = '#ffffff'
STROKE_COLOR = '#000000'


@dataclass(frozen=True)
class RenderSpec:
    """
    :param format: ascii或svg
    :param cell_size: svg中每个单元格的像素数
    :param margin: svg四周留白的像素数
    """
    format: str = 'ascii'
    cell_size: int = 24
    margin: int = 4

    def __post_init__(self):
        assert self.format in SUPPORT_FORMAT, f'没有该输出格式：{self.format}'


def _owners(p: Puzzle, s: Solution):
    owner = np.full((p.rows, p.cols), -1, dtype=np.int64)
    for i, rect in s.assignments:
        owner[rect.top:rect.top + rect.height, rect.left:rect.left + rect.width] = i
    return owner


def render_ascii(p: Puzzle, s: Solution) -> str:
    owner = _owners(p, s)
    rows, cols = p.rows, p.cols
    dark = {i for i, _ in s.assignments if p.clues[i].shade is Shade.DARK}

    def cell_dark(r, c):
        return 0 <= r < rows and 0 <= c < cols and int(owner[r, c]) in dark

    def h_edge(r, c):
        """第r条水平格线上第c段，位于单元格(r-1, c)与(r, c)之间"""
        if not 0 <= c < cols:
            return False
        return r == 0 or r == rows or owner[r - 1, c] != owner[r, c]

    def v_edge(r, c):
        if not 0 <= r < rows:
            return False
        return c == 0 or c == cols or owner[r, c - 1] != owner[r, c]

    canvas = [[' '] * (4 * cols + 1) for _ in range(2 * rows + 1)]
    for r in range(rows + 1):
        for c in range(cols + 1):
            arms = (v_edge(r - 1, c), v_edge(r, c), h_edge(r, c - 1), h_edge(r, c))
            if any(arms):
                canvas[2 * r][4 * c] = JUNCTIONS[arms]
            elif cell_dark(r, c):
                canvas[2 * r][4 * c] = FILL
            if c < cols:
                if h_edge(r, c):
                    canvas[2 * r][4 * c + 1:4 * c + 4] = [H_EDGE] * 3
                elif cell_dark(r, c):
                    canvas[2 * r][4 * c + 1:4 * c + 4] = [FILL] * 3
            if r < rows:
                if v_edge(r, c):
                    canvas[2 * r + 1][4 * c] = V_EDGE
                elif cell_dark(r, c):
                    canvas[2 * r + 1][4 * c] = FILL
    for r in range(rows):
        for c in range(cols):
            body = [FILL if cell_dark(r, c) else ' '] * 3
            index = p.clue_index(r, c)
            if index is not None:
                body[1] = p.clues[index].kind.value
            canvas[2 * r + 1][4 * c + 1:4 * c + 4] = body
    return ''.join(''.join(line) + '\n' for line in canvas)


def render_svg(p: Puzzle, s: Solution, cell_size=24, margin=4) -> str:
    width = p.cols * cell_size + 2 * margin
    height = p.rows * cell_size + 2 * margin
    font_size = cell_size * 2 // 3
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
             f'viewBox="0 0 {width} {height}">',
             f'<rect x="0" y="0" width="{width}" height="{height}" fill="{LIGHT_COLOR}"/>']
    for i, rect in s.assignments:
        fill = DARK_COLOR if p.clues[i].shade is Shade.DARK else LIGHT_COLOR
        lines.append(f'<rect x="{margin + rect.left * cell_size}" y="{margin + rect.top * cell_size}" '
                     f'width="{rect.width * cell_size}" height="{rect.height * cell_size}" '
                     f'fill="{fill}" stroke="{STROKE_COLOR}" stroke-width="2"/>')
    for clue in p.clues:
        x = margin + clue.col * cell_size + cell_size // 2
        y = margin + clue.row * cell_size + cell_size // 2
        color = LIGHT_COLOR if clue.shade is Shade.DARK else STROKE_COLOR
        lines.append(f'<text x="{x}" y="{y}" font-family="monospace" font-size="{font_size}" '
                     f'text-anchor="middle" dominant-baseline="central" fill="{color}">{clue.kind.value}</text>')
    lines.append('</svg>')
    return '\n'.join(lines) + '\n'


def render(p: Puzzle, s: Solution, spec: RenderSpec = RenderSpec()) -> str:
    """
    渲染合法解，暗色提示的矩形被填充
    :return: 文本文档，只取决于谜题、解与spec
    """
    verdict = validate(p, s)
    if not verdict.ok:
        raise PreconditionError(f'只能渲染合法的解：{verdict.violations[0]}')
    if spec.format == 'svg':
        return render_svg(p, s, spec.cell_size, spec.margin)
    return render_ascii(p, s)
