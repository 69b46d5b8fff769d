"""Generation quota planning across label and target cells."""

from __future__ import annotations

from dataclasses import dataclass

from ..corpus import ALL_TARGETS, HATEFUL, NON_HATEFUL, TargetIdentity


class PlanError(ValueError):
    """The requested total cannot be divided into valid cells."""


@dataclass(frozen=True)
class QuotaCell:
    intended_label: str
    target: TargetIdentity | None
    count: int


@dataclass(frozen=True)
class QuotaPlan:
    cells: tuple[QuotaCell, ...]
    total: int
    batch_size: int

    def __post_init__(self):
        if sum(c.count for c in self.cells) > self.total:
            raise PlanError("cell counts exceed the plan total")
        for cell in self.cells:
            if cell.count % self.batch_size != 0:
                raise PlanError(
                    f"cell count {cell.count} is not a multiple of batch size "
                    f"{self.batch_size}"
                )

    @property
    def planned(self) -> int:
        return sum(c.count for c in self.cells)


def plan_quotas(total: int, with_target: bool, batch_size: int) -> QuotaPlan:
    """Split a generation budget evenly over label (and target) cells.

    Without targets: two cells of total/2. With targets: 14 cells of
    floor(total/14) rounded down to a multiple of batch_size, so a 100k budget
    with batches of 10 yields 7,140 per cell.
    """
    if batch_size <= 0:
        raise PlanError(f"batch_size must be positive, got {batch_size}")
    if total <= 0 or total % 2 != 0:
        raise PlanError(f"total must be positive and even, got {total}")

    if not with_target:
        per_cell = total // 2
        if per_cell % batch_size != 0:
            raise PlanError(
                f"per-label count {per_cell} is not a multiple of batch size {batch_size}"
            )
        cells = tuple(QuotaCell(label, None, per_cell) for label in (HATEFUL, NON_HATEFUL))
        return QuotaPlan(cells=cells, total=total, batch_size=batch_size)

    per_cell = total // (2 * len(ALL_TARGETS))
    per_cell -= per_cell % batch_size
    if per_cell == 0:
        raise PlanError(
            f"total {total} is too small for 14 target cells with batch size {batch_size}"
        )
    cells = tuple(
        QuotaCell(label, target, per_cell)
        for label in (HATEFUL, NON_HATEFUL)
        for target in ALL_TARGETS
    )
    return QuotaPlan(cells=cells, total=total, batch_size=batch_size)
