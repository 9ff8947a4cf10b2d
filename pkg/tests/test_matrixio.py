import pytest

from srdc import matrixio
from srdc.circulant import CoefficientVector, pure_generator, bordered_generator
from srdc.cyclotomy import build_table, prime_params

T7 = build_table(prime_params(7))


def test_round_trip_pure_gf2(tmp_path):
    g = pure_generator(T7, CoefficientVector(q=2, m=(0, 1, 0, 0, 0, 0, 0)))
    path = tmp_path / "m.gm"
    matrixio.write_matrix(g, path, comments=["example"])
    back = matrixio.read_matrix(path)
    assert back.rows == g.rows and back.q == 2
    assert path.read_text().startswith("# example\n14 7 2\n")


def test_round_trip_bordered_gf4(tmp_path):
    g = bordered_generator(T7, CoefficientVector(q=4, m=(0, 2, 3, 1, 0, 2, 3), alpha=0))
    path = tmp_path / "m.gm"
    matrixio.write_matrix(g, path)
    back = matrixio.read_matrix(path)
    assert back.rows == g.rows and (back.n_rows, back.n_cols) == (8, 16)


def test_parse_accepts_comments_and_blank_lines():
    text = "# a comment\n\n# another\n4 2 2\n1010\n0101\n"
    g = matrixio.parse_matrix(text)
    assert g.row_entries(0) == [1, 0, 1, 0]


@pytest.mark.parametrize("text,fragment", [
    ("", "missing header"),
    ("4 2\n1010\n0101\n", "header"),
    ("x 2 2\n1010\n0101\n", "non-integer"),
    ("4 2 3\n1010\n0101\n", "unsupported field"),
    ("0 2 2\n\n\n", "positive"),
    ("4 2 2\n1010\n", "expected 2 rows"),
    ("4 2 2\n101\n0101\n", "3 symbols"),
    ("4 2 2\n10w0\n0101\n", "not an element"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ValueError, match=fragment):
        matrixio.parse_matrix(text)
