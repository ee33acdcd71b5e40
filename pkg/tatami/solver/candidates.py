from typing import List, Optional

import numpy as np

from tatami.grid.puzzle import CellSet, Puzzle, Rect, shape_ok


def _prefix(mask):
    out = np.zeros((mask.shape[0] + 1, mask.shape[1] + 1), dtype=np.int64)
    out[1:, 1:] = mask.astype(np.int64).cumsum(axis=0).cumsum(axis=1)
    return out


class CandidateTable:
    """为一个谜题（可限定区域）预先计算每个提示的候选矩形"""

    def __init__(self, p: Puzzle, area: Optional[CellSet] = None):
        self.puzzle = p
        clue_mask = np.zeros((p.rows, p.cols), dtype=bool)
        for clue in p.clues:
            clue_mask[clue.row, clue.col] = True
        # 阻挡：其它提示或区域外单元格；提示自身单独处理
        blocked = ~area.mask if area is not None else np.zeros((p.rows, p.cols), dtype=bool)
        self._clues = _prefix(clue_mask)
        self._blocked = _prefix(blocked)
        self._cache = {}

    def _count(self, table, top, left, bottom, right):
        return int(table[bottom + 1, right + 1] - table[top, right + 1] - table[bottom + 1, left] + table[top, left])

    def _free(self, top, left, bottom, right):
        return (self._count(self._clues, top, left, bottom, right) == 1 and
                self._count(self._blocked, top, left, bottom, right) == 0)

    def rects(self, index) -> List[Rect]:
        if index in self._cache:
            return self._cache[index]
        p = self.puzzle
        clue = p.clues[index]
        out = []
        if self._free(clue.row, clue.col, clue.row, clue.col):
            # 向上、向左扩展，一旦不合法更大的矩形也不合法
            for top in range(clue.row, -1, -1):
                if not self._free(top, clue.col, clue.row, clue.col):
                    break
                for left in range(clue.col, -1, -1):
                    if not self._free(top, left, clue.row, clue.col):
                        break
                    for bottom in range(clue.row, p.rows):
                        if not self._free(top, left, bottom, clue.col):
                            break
                        for right in range(clue.col, p.cols):
                            if not self._free(top, left, bottom, right):
                                break
                            rect = Rect(top, left, bottom - top + 1, right - left + 1)
                            if shape_ok(clue.kind, rect):
                                out.append(rect)
        out.sort()
        self._cache[index] = out
        return out


def candidate_rects(p: Puzzle, index, area: Optional[CellSet] = None) -> List[Rect]:
    """
    提示的全部候选矩形：包含该提示、在网格内、不含其它提示、形状符合
    结果按(top, left, height, width)排序
    """
    assert 0 <= index < len(p.clues), f'提示编号越界：{index}'
    return CandidateTable(p, area).rects(index)
