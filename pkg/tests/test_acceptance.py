"""AC-1 .. AC-8.  Each test prints a single PASS/FAIL line, repeated in the
terminal summary, and fails with the list of broken sub-checks."""

from wallx import acceptance


def _assert(result):
    assert result.ok, result.line()


def test_ac1_divisor_matrices(record_criterion):
    res = record_criterion(acceptance.ac1())
    _assert(res)
    assert res.seconds < 1


def test_ac2_support_functions(record_criterion):
    _assert(record_criterion(acceptance.ac2()))


def test_ac3_quiver_structure(record_criterion):
    _assert(record_criterion(acceptance.ac3()))


def test_ac4_homological(record_criterion):
    res = record_criterion(acceptance.ac4())
    assert res.seconds < 60
    _assert(res)


def test_ac5_pt_closed_form_orientation(record_criterion):
    res = record_criterion(acceptance.ac5())
    assert res.seconds < 60
    _assert(res)


def test_ac6_oracle_against_dtpt_assembly(record_criterion):
    res = record_criterion(acceptance.ac6())
    assert res.seconds < 300
    _assert(res)


def test_ac7_plane_partitions(record_criterion):
    _assert(record_criterion(acceptance.ac7()))


def test_ac8_engine_properties(record_criterion):
    _assert(record_criterion(acceptance.ac8()))
