"""
Unit tests for the toolkit exception classes.
"""

import pytest

from src.gabor.exceptions import (
    GaborError, DimensionError, LatticeSpecError, NotInvertibleError, NotAFrameError,
    ConvergenceError, NotPositiveDefiniteError, NotHermitianError, SingularMatrixError
)


class TestGaborError:
    """Test cases for GaborError base exception."""

    def test_gabor_error_basic(self):
        """Test basic error creation."""
        error = GaborError("Test error message")
        assert str(error) == "Test error message"
        assert error.message == "Test error message"
        assert error.details == {}
        assert error.operation is None

    def test_gabor_error_with_details(self):
        """Test error with details."""
        details = {"n": 8, "size": 3}
        error = GaborError("Test error", details=details)
        assert error.details == details

    def test_gabor_error_with_operation(self):
        """Test error with the raising operation."""
        error = GaborError("Test error", operation="stft")
        assert str(error) == "[stft] Test error"
        assert error.operation == "stft"


class TestSubclasses:
    """Test the specific error types."""

    @pytest.mark.parametrize("cls", [
        DimensionError, LatticeSpecError, NotInvertibleError, NotAFrameError,
        ConvergenceError, NotPositiveDefiniteError, NotHermitianError, SingularMatrixError
    ])
    def test_inheritance(self, cls):
        """Every toolkit error is a GaborError."""
        assert issubclass(cls, GaborError)

    def test_dimension_error(self):
        error = DimensionError("length mismatch", operation="inner")
        assert str(error) == "[inner] Dimension Error: length mismatch"

    def test_lattice_spec_error(self):
        error = LatticeSpecError("bad syntax", spec="sep:x")
        assert "Lattice Spec Error [sep:x]: bad syntax" in str(error)
        assert error.spec == "sep:x"

    def test_lattice_spec_error_without_spec(self):
        assert str(LatticeSpecError("missing")) == "Lattice Spec Error: missing"

    def test_not_invertible_error(self):
        error = NotInvertibleError("no inverse", residual=0.5)
        assert "Not Invertible: no inverse (residual 5.000e-01)" in str(error)
        assert error.residual == 0.5

    def test_not_a_frame_error(self):
        report = object()
        error = NotAFrameError("lower bound is zero", report, operation="canonical_dual")
        assert error.report is report
        assert error.details == {'report': report}
        assert str(error) == "[canonical_dual] Not A Frame: lower bound is zero"

    def test_convergence_error(self):
        error = ConvergenceError("too slow", iterations=40)
        assert "Convergence Error: too slow (after 40 iterations)" in str(error)
        assert error.iterations == 40

    def test_not_positive_definite_error(self):
        error = NotPositiveDefiniteError("negative curvature", curvature=-1.0)
        assert error.curvature == -1.0
        assert "Not Positive Definite" in str(error)

    def test_not_hermitian_error(self):
        error = NotHermitianError("asymmetric", deviation=0.25)
        assert error.deviation == 0.25
        assert "Not Hermitian: asymmetric" in str(error)

    def test_singular_matrix_error(self):
        error = SingularMatrixError("pivot below threshold", pivot_index=3)
        assert "Singular Matrix: pivot below threshold (pivot 3)" in str(error)
        assert error.pivot_index == 3
