import pytest

from protkern.boundaried import boundary_of
from protkern.graph import Graph, generate, parse_family
from protkern.protrusion import (
    compute_xr,
    is_protrusion,
    partition_protrusion,
    split_protrusion,
)
from protkern.treewidth import validate, width


def pendant_path_host():
    """3x3 grid with one pendant path of 12 edges hanging off corner 0."""
    return generate(parse_family("grid-with-pendant-paths:3,3,1,12"))


class TestIsProtrusion:
    def test_accepts_pendant_path(self):
        g = pendant_path_host()
        tail = frozenset(range(9, 21)) | {0}
        p = is_protrusion(g, tail, 1)
        assert p is not None
        assert p.boundary == frozenset({0})
        assert validate(p.witness) == []
        assert width(p.witness) <= 1

    def test_rejects_wide_boundary(self):
        g = generate(parse_family("cycle:8"))
        assert is_protrusion(g, {1, 2, 3}, 1) is None  # boundary {1, 3}

    def test_rejects_high_treewidth(self):
        g = generate(parse_family("grid:3,3"))
        assert is_protrusion(g, set(range(9)), 2) is None
        assert is_protrusion(g, set(range(9)), 3) is not None

    def test_whole_graph_has_empty_boundary(self):
        g = generate(parse_family("path:6"))
        p = is_protrusion(g, set(range(6)), 1)
        assert p.boundary == frozenset()


class TestComputeXR:
    def test_path_center(self):
        g = generate(parse_family("path:10"))
        res = compute_xr(g, {4})
        assert res.X == frozenset(range(10)) and res.warnings == []

    def test_excludes_wide_component(self):
        grid = generate(parse_family("grid-with-pendant-paths:4,4,1,6"))
        attach = 16  # first pendant vertex
        res = compute_xr(grid, {attach})
        assert res.X == frozenset({attach}) | frozenset(range(17, 22))

    def test_oversized_component_warns(self):
        g = generate(parse_family("path:50"))
        res = compute_xr(g, {40}, vertex_cap=32)
        assert any("too large" in w for w in res.warnings)
        assert 40 in res.X

    def test_r_out_of_range(self):
        with pytest.raises(ValueError):
            compute_xr(generate(parse_family("path:3")), {7})


class TestSplitProtrusion:
    def test_window_contract_on_pendant_path(self):
        g = pendant_path_host()
        p = is_protrusion(g, frozenset(range(9, 21)) | {0}, 1)
        for c in (5, 6):
            y = split_protrusion(g, p, c)
            assert c < len(y.X) <= 2 * c
            assert len(boundary_of(g, y.X)) <= 2 * p.t + 1
            assert validate(y.witness) == []
            assert width(y.witness) <= 2 * p.t + 1

    def test_small_protrusion_returned_whole(self):
        g = generate(parse_family("path:8"))
        p = is_protrusion(g, set(range(4)), 1)
        y = split_protrusion(g, p, 3)
        assert y.X == p.X and y.t == 2 * p.t + 1

    def test_rejects_undersized(self):
        g = generate(parse_family("path:8"))
        p = is_protrusion(g, set(range(3)), 1)
        with pytest.raises(ValueError):
            split_protrusion(g, p, 3)

    def test_independent_recheck(self):
        g = pendant_path_host()
        p = is_protrusion(g, frozenset(range(9, 21)) | {0}, 1)
        y = split_protrusion(g, p, 5)
        assert is_protrusion(g, y.X, 2 * p.t + 1) is not None


class TestPartitionProtrusion:
    def _check(self, g, p, Z):
        res = partition_protrusion(g, p, Z)
        covered = set()
        t_out = 4 * p.t + 2
        for part in res.parts:
            covered |= part.X
            assert validate(part.witness) == []
            assert width(part.witness) <= t_out
            assert len(part.boundary) <= t_out
            assert (frozenset(Z) & part.X) <= boundary_of(g, part.X)
        assert covered == p.X
        return res

    def test_empty_z_returns_whole(self):
        g = generate(parse_family("path:9"))
        p = is_protrusion(g, set(range(9)), 1)
        res = partition_protrusion(g, p, set())
        assert len(res.parts) == 1 and res.parts[0].X == p.X

    def test_path_single_mark(self):
        g = generate(parse_family("path:10"))
        p = is_protrusion(g, set(range(1, 10)), 1)
        res = self._check(g, p, {5})
        assert len(res.parts) <= 4 * 2

    def test_star_three_marks(self):
        g = generate(parse_family("star-of-paths:3,6"))
        p = is_protrusion(g, set(range(g.n)), 1)
        self._check(g, p, {3, 9, 15})

    def test_marks_on_boundary(self):
        g = generate(parse_family("path:10"))
        p = is_protrusion(g, set(range(1, 10)), 1)
        self._check(g, p, {1, 9})

    def test_z_not_inside_raises(self):
        g = generate(parse_family("path:10"))
        p = is_protrusion(g, set(range(1, 10)), 1)
        with pytest.raises(ValueError):
            partition_protrusion(g, p, {0})

    def test_multi_component_protrusion(self):
        g = Graph.from_edges(
            9,
            [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 7), (7, 8)],
        )
        p = is_protrusion(g, {1, 2, 3, 4, 5, 6, 7, 8}, 2)
        self._check(g, p, {2, 6})
