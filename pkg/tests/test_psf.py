"""Tests for PSF representations, generators, transforms and the text format."""

import numpy as np
import pytest

from spatial_deconv.psf import (
    DensePsf,
    PsfFormatError,
    SparsePsf,
    UniformConvexPsf,
    adjoint,
    bounding_box,
    format_sparse_psf,
    is_uniform_line,
    load_sparse_psf,
    make_box_psf,
    make_diagonal_psf,
    make_disc_psf,
    make_line_psf,
    parse_psf_spec,
    parse_sparse_psf,
    rectangle_extent,
    save_sparse_psf,
    to_dense,
    to_sparse,
    to_uniform_convex,
    weight_maps_close,
)

ALL_FAMILIES = [
    make_line_psf(4),
    make_line_psf(9),
    make_box_psf(3, 5),
    make_box_psf(2, 2),
    make_disc_psf(9),
    make_disc_psf(4),
    make_diagonal_psf(5),
    DensePsf(np.array([[0.0, 2.0, 1.0], [3.0, 0.0, 4.0]]), (0, 1)),
]


def total_mass(psf) -> float:
    return sum(w for _, _, w in psf.iter_taps())


class TestGenerators:
    @pytest.mark.parametrize("length", [1, 2, 3, 9, 17])
    def test_line(self, length):
        psf = make_line_psf(length)
        assert psf.anchor == (length // 2, 0)
        assert psf.weights.shape == (1, length)
        assert total_mass(psf) == pytest.approx(1.0, abs=1e-12)

    def test_box(self):
        psf = make_box_psf(4, 3)
        assert psf.weights.shape == (3, 4)
        assert psf.anchor == (2, 1)
        assert bounding_box(psf) == (-2, 1, -1, 1)

    @pytest.mark.parametrize("diameter", [1, 2, 3, 9, 17])
    def test_disc_is_uniform_and_symmetric(self, diameter):
        psf = make_disc_psf(diameter)
        assert isinstance(psf, UniformConvexPsf)
        assert total_mass(psf) == pytest.approx(1.0, abs=1e-12)
        if diameter % 2:
            assert weight_maps_close(adjoint(psf), psf)

    def test_small_discs_fill_their_square(self):
        assert make_disc_psf(3).support_count == 9
        assert make_disc_psf(2).support_count == 4

    def test_disc_9_is_not_a_rectangle(self):
        psf = make_disc_psf(9)
        assert rectangle_extent(psf) is None
        assert psf.support_count < 81
        assert psf.y_range == (-4, 4)

    def test_diagonal(self):
        psf = make_diagonal_psf(3)
        assert [t[:2] for t in psf.taps] == [(-1, -1), (0, 0), (1, 1)]
        assert all(w == pytest.approx(1 / 3) for _, _, w in psf.taps)

    @pytest.mark.parametrize("factory", [make_line_psf, make_disc_psf, make_diagonal_psf])
    def test_rejects_nonpositive_size(self, factory):
        with pytest.raises(ValueError, match="positive"):
            factory(0)


class TestRepresentations:
    def test_dense_normalises(self):
        psf = DensePsf(np.array([[1.0, 3.0]]), (0, 0))
        assert psf.weights.tolist() == [[0.25, 0.75]]

    def test_dense_rejects_negative_weights(self):
        with pytest.raises(ValueError, match=">= 0"):
            DensePsf(np.array([[1.0, -1.0, 1.0]]), (1, 0))

    def test_dense_rejects_anchor_outside(self):
        with pytest.raises(ValueError, match="outside"):
            DensePsf(np.ones((2, 2)), (2, 0))

    def test_dense_taps_relative_to_anchor(self):
        psf = DensePsf(np.array([[0.0, 1.0], [1.0, 0.0]]), (1, 1))
        assert psf.weight_map() == {(0, -1): 0.5, (-1, 0): 0.5}

    def test_sparse_normalises(self):
        psf = SparsePsf(((0, 0, 2.0), (1, 0, 2.0)))
        assert psf.taps == ((0, 0, 0.5), (1, 0, 0.5))

    def test_sparse_rejects_duplicates(self):
        with pytest.raises(ValueError, match="Duplicate"):
            SparsePsf(((0, 0, 1.0), (0, 0, 1.0)))

    def test_sparse_rejects_zero_weight(self):
        with pytest.raises(ValueError, match="nonpositive"):
            SparsePsf(((0, 0, 1.0), (1, 0, 0.0)))

    def test_convex_rejects_gap_in_rows(self):
        with pytest.raises(ValueError, match="contiguous"):
            UniformConvexPsf(((0, 0, 1), (2, 0, 1)))

    def test_convex_rejects_inverted_extent(self):
        with pytest.raises(ValueError):
            UniformConvexPsf(((0, 2, 1),))

    @pytest.mark.parametrize("psf", ALL_FAMILIES, ids=repr)
    def test_conversions_preserve_weight_map(self, psf):
        assert weight_maps_close(to_dense(psf), psf)
        assert weight_maps_close(to_sparse(psf), psf)
        assert weight_maps_close(to_dense(to_sparse(psf)), psf)


class TestAdjoint:
    @pytest.mark.parametrize("psf", ALL_FAMILIES, ids=repr)
    def test_involution(self, psf):
        assert weight_maps_close(adjoint(adjoint(psf)), psf)

    @pytest.mark.parametrize("psf", ALL_FAMILIES, ids=repr)
    def test_reflects_every_tap(self, psf):
        reflected = adjoint(psf).weight_map()
        for (dx, dy), w in psf.weight_map().items():
            assert reflected[(-dx, -dy)] == pytest.approx(w)

    @pytest.mark.parametrize("psf", ALL_FAMILIES, ids=repr)
    def test_keeps_representation(self, psf):
        assert type(adjoint(psf)) is type(psf)

    def test_even_line(self):
        psf = make_line_psf(4)
        assert bounding_box(psf) == (-2, 1, 0, 0)
        assert bounding_box(adjoint(psf)) == (-1, 2, 0, 0)


class TestShapeQueries:
    def test_box_rows(self):
        convex = to_uniform_convex(make_box_psf(3, 2))
        assert convex.rows == ((-1, -1, 1), (0, -1, 1))

    def test_diagonal_is_row_convex(self):
        convex = to_uniform_convex(make_diagonal_psf(3))
        assert convex.rows == ((-1, -1, -1), (0, 0, 0), (1, 1, 1))

    def test_gap_is_not_row_convex(self):
        with pytest.raises(ValueError, match="contiguous"):
            to_uniform_convex(SparsePsf(((0, 0, 1.0), (2, 0, 1.0))))

    def test_non_uniform_is_not_row_convex(self):
        with pytest.raises(ValueError, match="uniform"):
            to_uniform_convex(DensePsf(np.array([[1.0, 2.0]]), (0, 0)))

    def test_rectangle_extent(self):
        assert rectangle_extent(make_box_psf(3, 5)) == (-1, 1, -2, 2)
        assert rectangle_extent(make_diagonal_psf(3)) is None

    def test_uniform_line(self):
        assert is_uniform_line(make_line_psf(9))
        assert is_uniform_line(make_box_psf(5, 1))
        assert is_uniform_line(DensePsf(np.ones((1, 1)), (0, 0)))
        assert not is_uniform_line(make_box_psf(3, 3))
        assert not is_uniform_line(make_diagonal_psf(9))


class TestSparseText:
    def test_parse_with_comments(self):
        psf = parse_sparse_psf("# diagonal pair\n\n0 0 2\n1 1 2\n")
        assert psf.taps == ((0, 0, 0.5), (1, 1, 0.5))

    def test_error_names_line(self):
        with pytest.raises(PsfFormatError) as e:
            parse_sparse_psf("0 0 1\n1 0\n")
        assert e.value.line == 2
        assert str(e.value).startswith("line 2:")

    def test_duplicate_names_line(self):
        with pytest.raises(PsfFormatError, match="duplicate") as e:
            parse_sparse_psf("0 0 1\n# again\n0 0 1\n")
        assert e.value.line == 3

    def test_nonpositive_weight(self):
        with pytest.raises(PsfFormatError, match="positive"):
            parse_sparse_psf("0 0 -1\n")

    @pytest.mark.parametrize("weight", ["inf", "-inf", "nan"])
    def test_non_finite_weight_names_line(self, weight):
        with pytest.raises(PsfFormatError, match="finite") as e:
            parse_sparse_psf(f"0 0 1\n1 0 {weight}\n")
        assert e.value.line == 2

    def test_empty(self):
        with pytest.raises(PsfFormatError, match="no taps"):
            parse_sparse_psf("# nothing\n")

    @pytest.mark.parametrize("psf", ALL_FAMILIES, ids=repr)
    def test_format_parse_identical_taps(self, psf):
        assert parse_sparse_psf(format_sparse_psf(psf)).taps == to_sparse(psf).taps

    def test_file_round_trip(self, tmp_path):
        psf = make_diagonal_psf(9)
        path = save_sparse_psf(psf, tmp_path / "psfs" / "diag9.txt")
        assert load_sparse_psf(path).taps == psf.taps

    def test_load_missing(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_sparse_psf(tmp_path / "nope.txt")


class TestPsfSpec:
    def test_families(self):
        assert isinstance(parse_psf_spec("line:9"), DensePsf)
        assert parse_psf_spec("box:9x5").weights.shape == (5, 9)
        assert isinstance(parse_psf_spec("disc:9"), UniformConvexPsf)
        assert parse_psf_spec("diag:17").support_count == 17

    def test_file(self, tmp_path):
        path = save_sparse_psf(make_disc_psf(5), tmp_path / "disc5.txt")
        psf = parse_psf_spec(f"file:{path}")
        assert isinstance(psf, SparsePsf)
        assert weight_maps_close(psf, make_disc_psf(5))

    @pytest.mark.parametrize("spec", ["blob:3", "line", "line:x", "box:9", "disc:0", "line:-3"])
    def test_invalid(self, spec):
        with pytest.raises(PsfFormatError):
            parse_psf_spec(spec)
