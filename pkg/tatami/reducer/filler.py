from dataclasses import dataclass
from typing import Dict, List, Tuple

from tatami.errors import AssemblyError
from tatami.grid.puzzle import CellSet, Clue, ClueKind, Puzzle, Rect
from tatami.reducer.assemble import PlacedGadget, gadget_cells
from tatami.utils.logger import setup_logger

logger = setup_logger(__name__)


def aspect_kind(rect: Rect) -> ClueKind:
    """按宽高比选提示：方形为`+`，宽大于高为`-`，否则为`|`"""
    if rect.height == rect.width:
        return ClueKind.SQUARE
    return ClueKind.HORIZONTAL if rect.width > rect.height else ClueKind.VERTICAL


@dataclass(frozen=True)
class FillerRect:
    rect: Rect
    kind: ClueKind

    @property
    def clue_cell(self) -> Tuple[int, int]:
        """右上角"""
        return self.rect.top, self.rect.right


@dataclass(frozen=True)
class FillerPlan:
    rects: Tuple[FillerRect, ...]

    def __len__(self):
        return len(self.rects)

    @property
    def area(self):
        return sum(f.rect.area for f in self.rects)

    def cells(self, rows, cols) -> CellSet:
        return CellSet.from_cells(rows, cols, (cell for f in self.rects for cell in f.rect.cells()))


def strips(free: CellSet) -> List[Tuple[int, int, int]]:
    """每一行中连续的空闲单元格段，(行, 左列, 右列)，右列含"""
    mask = free.mask
    out = []
    for r in range(mask.shape[0]):
        c = 0
        while c < mask.shape[1]:
            if not mask[r, c]:
                c += 1
                continue
            end = c
            while end + 1 < mask.shape[1] and mask[r, end + 1]:
                end += 1
            out.append((r, c, end))
            c = end + 1
    return out


def plan_filler(free: CellSet) -> FillerPlan:
    """
    先把每行切成被小工具隔开的极大水平段，再把上下相邻、左右端点相同的段合并成一个矩形
    """
    # (左列, 右列) -> [首行, 末行]
    open_rects: Dict[Tuple[int, int], List[int]] = {}
    spans: List[List[int]] = []
    for r, left, right in strips(free):
        cur = open_rects.get((left, right))
        if cur is not None and cur[1] == r - 1:
            cur[1] = r
        else:
            cur = [r, r, left, right]
            spans.append(cur)
            open_rects[(left, right)] = cur
    rects = []
    for top, bottom, left, right in spans:
        rect = Rect(top, left, bottom - top + 1, right - left + 1)
        rects.append(FillerRect(rect, aspect_kind(rect)))
    return FillerPlan(tuple(rects))


def place_filler(p: Puzzle, placed: List[PlacedGadget]) -> FillerPlan:
    """小工具整体区域与外护套之外的单元格全部由填充矩形恰好铺满"""
    owned = gadget_cells(placed, p.rows, p.cols)
    free = CellSet.full(p.rows, p.cols) - owned
    plan = plan_filler(free)
    if plan.area != len(free) or plan.cells(p.rows, p.cols) != free:
        raise AssemblyError(f'填充没有恰好铺满空闲单元格：{plan.area} != {len(free)}')
    logger.debug(f'填充：{len(plan)}个矩形，共{plan.area}个单元格')
    return plan


def apply_filler(p: Puzzle, plan: FillerPlan) -> Puzzle:
    clues = list(p.clues)
    for f in plan.rects:
        r, c = f.clue_cell
        if p.clue_index(r, c) is not None:
            raise AssemblyError(f'填充提示与已有提示重叠：{(r, c)}')
        clues.append(Clue(r, c, f.kind))
    return Puzzle(p.rows, p.cols, tuple(clues))
