import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import c_shape, family, plus_sign, rect
from kpack import generators
from kpack.arrangement import (
    build,
    common_point_exists,
    depth2_components,
    flood_fill_oracle,
    holes,
    is_kfold,
    lemma_euler_check,
    max_depth,
    required_resolution,
    union_components,
)
from kpack.errors import DegenerateContact, GenerationFailed, GeneralPositionViolation, ResolutionTooCoarse, TripleIntersection
from kpack.geometry import Region, SimplePolygon


def frame():
    """Four bars enclosing one square hole."""
    return family(
        rect(0, 0, 7, 2, "s"), rect(0, 5, 7, 7, "n"),
        rect(1, -1, 3, 8, "w"), rect(4, -1, 6, 8, "e"),
    )


class TestBasics:
    def test_single_square(self):
        arr = build(family(rect(0, 0, 1, 1, "a")))
        assert (arr.n_vertices, arr.n_edges, arr.n_faces) == (4, 4, 2)
        assert holes(arr) == 0 and union_components(arr) == 1
        assert arr.euler_holds()

    def test_disjoint_squares(self):
        arr = build(family(rect(0, 0, 1, 1, "a"), rect(3, 0, 4, 1, "b")))
        assert holes(arr) == 0 and union_components(arr) == 2
        assert max_depth(arr).max_depth == 1
        assert arr.euler_holds()

    def test_nested_squares(self):
        arr = build(family(rect(0, 0, 10, 10, "big"), rect(2, 2, 3, 3, "small")))
        assert max_depth(arr).max_depth == 2
        assert union_components(arr) == 1 and holes(arr) == 0

    def test_plus_sign(self):
        arr = build(family(*plus_sign()))
        prof = max_depth(arr)
        assert prof.max_depth == 2
        assert prof.face_count == {0: 1, 1: 4, 2: 1}
        assert prof.face_area[2] == 4
        assert holes(arr) == 0
        assert arr.n_crossings == 4

    def test_frame_has_one_hole(self):
        arr = build(frame())
        assert holes(arr) == 1
        assert union_components(arr) == 1
        assert arr.euler_holds()

    def test_annulus_member(self):
        ring = Region(
            (SimplePolygon.from_coords([[0, 0], [6, 0], [6, 6], [0, 6]]),),
            (SimplePolygon.from_coords([[2, 2], [4, 2], [4, 4], [2, 4]]),),
            "ring",
        )
        arr = build(family(ring))
        assert holes(arr) == 1
        assert arr.euler_holds()

    def test_c_shape_pair(self):
        fam = family(c_shape(), rect(3, 1, 5, 5, "bar"))
        assert holes(fam) == 1
        assert depth2_components(fam) == 2

    def test_union_touching_only_at_vertex_is_rejected(self):
        with pytest.raises(GeneralPositionViolation):
            build(family(rect(0, 0, 1, 1, "a"), rect(1, 1, 2, 2, "b")))

    def test_degenerate_contact_carries_locus(self):
        with pytest.raises(DegenerateContact) as err:
            build(family(rect(0, 0, 2, 2, "a"), rect(1, 2, 3, 4, "b")))
        assert err.value.locus is not None
        assert set(err.value.members) == {"a", "b"}

    def test_three_boundaries_through_one_point(self):
        # three pairwise crossings placed at the same point (1, 1)
        a = Region.from_coords([[0, 0], [2, 2], [0, 2]], "a")
        b = Region.from_coords([[2, 0], [0, 2], [0, 0]], "b")
        c = Region.from_coords([[1, -1], [1, 3], [-1, 3]], "c")
        with pytest.raises(GeneralPositionViolation):
            build(family(a, b, c))


class TestDepth:
    def test_grid_bars_two_fold(self):
        fam = generators.gen_grid_bars(3)
        assert is_kfold(fam, 2) and not is_kfold(fam, 1)

    def test_triple_overlap(self):
        fam = family(rect(0, 0, 4, 4, "a"), rect(1, 1, 5, 5, "b"), rect(2, -1, 3, 6, "c"))
        assert max_depth(fam).max_depth == 3
        with pytest.raises(TripleIntersection):
            lemma_euler_check(fam)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 10_000))
    def test_layers_respect_k(self, seed):
        fam = generators.gen_k_layer_packing(2, 6, seed=seed, window=(0, 0, 40, 40))
        assert max_depth(fam).max_depth <= 2

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 10_000))
    def test_depth_two_faces_count_pair_components(self, seed):
        fam = generators.gen_k_layer_packing(2, 4, seed=seed, kind="stars", window=(0, 0, 30, 30))
        arr = build(fam)
        n_depth2 = sum(1 for f in arr.faces if len(f.coverage) == 2)
        assert depth2_components(arr) == n_depth2


class TestLemma:
    @pytest.mark.parametrize("ell", [2, 3, 4, 5])
    def test_grid_equality(self, ell):
        rep = lemma_euler_check(generators.gen_grid_bars(ell))
        assert rep.h == (ell - 1) ** 2
        assert rep.gamma_S == ell * ell
        assert rep.rhs == rep.h and rep.holds

    def test_two_disjoint_squares(self):
        rep = lemma_euler_check(family(rect(0, 0, 1, 1, "a"), rect(3, 0, 4, 1, "b")))
        assert (rep.h, rep.rhs, rep.holds) == (0, -1, True)

    def test_frame(self):
        rep = lemma_euler_check(frame())
        assert rep.gamma_S == 4 and rep.rhs == 1 and rep.h == 1

    def test_to_dict_keys(self):
        rep = lemma_euler_check(frame())
        assert list(rep.to_dict()) == ["h", "gamma_S", "sum_gamma_Xi", "rhs", "holds", "n", "max_depth"]

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10_000), st.sampled_from(["discs", "stars", "rectangles", "fat_triangles"]))
    def test_random_triple_free(self, seed, kind):
        fam = generators.gen_k_layer_packing(2, 5, seed=seed, kind=kind, window=(0, 0, 40, 40))
        assert lemma_euler_check(fam).holds


class TestHelly:
    def test_witness_family(self):
        fam = generators.gen_triple_witness_family(6, seed=4)
        ok, witness = common_point_exists(fam)
        assert ok
        assert all(m.contains(witness) for m in fam)

    def test_venn_triple_has_no_common_point(self):
        fam = generators.gen_venn_triple(seed=1)
        ok, witness = common_point_exists(fam)
        assert not ok and witness is None
        assert max_depth(fam).max_depth == 2

    def test_empty_family(self):
        with pytest.raises(ValueError):
            common_point_exists(family())


class TestOracle:
    @pytest.mark.parametrize("ell", [2, 3, 4])
    def test_grid(self, ell):
        fam = generators.gen_grid_bars(ell)
        assert required_resolution(fam) == 11
        res = required_resolution(fam)
        out = flood_fill_oracle(fam, res)
        assert out.holes == (ell - 1) ** 2
        assert out.union_components == 1
        assert out.max_depth_sampled == 2

    def test_too_coarse(self):
        fam = generators.gen_grid_bars(3)
        with pytest.raises(ResolutionTooCoarse) as err:
            flood_fill_oracle(fam, 1)
        assert err.value.required == required_resolution(fam)

    def test_not_strict_runs_anyway(self):
        out = flood_fill_oracle(generators.gen_grid_bars(3), 1, strict=False)
        assert out.resolution == 1

    def test_frame(self):
        out = flood_fill_oracle(frame(), required_resolution(frame()))
        assert (out.holes, out.union_components) == (1, 1)

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10_000), st.sampled_from(["stars", "discs", "rectangles", "fat_triangles"]))
    def test_agrees_on_random_families(self, seed, kind):
        spec = generators.GeneratorSpec(kind, n=6, seed=seed, window=(0, 0, 16, 16), min_clearance="1/4", lattice=8)
        try:
            fam = generators.generate(spec)
        except GenerationFailed:
            assume(False)
        arr = build(fam)
        out = flood_fill_oracle(arr, required_resolution(arr))
        assert out.holes == holes(arr)
        assert out.union_components == union_components(arr)


def test_interior_point_lies_in_face():
    fam = frame()
    arr = build(fam)
    for f, face in enumerate(arr.faces[1:], start=1):
        p = arr.interior_point(f)
        covered = {i for i, m in enumerate(fam) if m.contains(p)}
        assert covered == set(face.coverage)


@pytest.mark.parametrize("seed", [0, 99])
def test_oracle_ignores_acute_corner_slivers(seed):
    # spikes of these stars sample as diagonal staircases at every resolution
    fam = generators.gen_stars(6, seed=seed, window=(0, 0, 16, 16), min_clearance="1/4", lattice=8)
    arr = build(fam)
    for res in (required_resolution(arr), 2 * required_resolution(arr)):
        out = flood_fill_oracle(arr, res)
        assert (out.holes, out.union_components) == (holes(arr), union_components(arr))
