import pytest

from targetaug.augment import PlanError, plan_quotas
from targetaug.corpus import ALL_TARGETS, HATEFUL, NON_HATEFUL


def test_paper_scale_with_targets():
    plan = plan_quotas(100_000, with_target=True, batch_size=10)
    assert len(plan.cells) == 14
    assert all(c.count == 7_140 for c in plan.cells)
    assert plan.planned == 14 * 7_140


def test_paper_scale_without_targets():
    plan = plan_quotas(100_000, with_target=False, batch_size=10)
    assert len(plan.cells) == 2
    assert {c.intended_label for c in plan.cells} == {HATEFUL, NON_HATEFUL}
    assert all(c.count == 50_000 for c in plan.cells)
    assert all(c.target is None for c in plan.cells)


def test_exact_division_small():
    plan = plan_quotas(28, with_target=True, batch_size=2)
    assert len(plan.cells) == 14
    assert all(c.count == 2 for c in plan.cells)


def test_every_label_target_cell_present():
    plan = plan_quotas(280, with_target=True, batch_size=1)
    cells = {(c.intended_label, c.target) for c in plan.cells}
    assert cells == {
        (label, target) for label in (HATEFUL, NON_HATEFUL) for target in ALL_TARGETS
    }


def test_odd_total_rejected():
    with pytest.raises(PlanError, match="even"):
        plan_quotas(101, with_target=False, batch_size=1)


def test_vanishing_cells_rejected():
    with pytest.raises(PlanError, match="too small"):
        plan_quotas(28, with_target=True, batch_size=5)


def test_unbatchable_label_split_rejected():
    with pytest.raises(PlanError, match="multiple of batch size"):
        plan_quotas(30, with_target=False, batch_size=10)


def test_counts_never_exceed_total():
    for total in (280, 1400, 99_932):
        plan = plan_quotas(total, with_target=True, batch_size=7)
        assert plan.planned <= total
