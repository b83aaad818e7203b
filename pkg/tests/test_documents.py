import pytest

from helper.documents import (
    FailureRecord,
    PrismatoidDocument,
    SuiteResult,
    VerificationReport,
    load_polygon,
    load_prismatoid,
    parse_polygon,
    parse_prismatoid,
)
from helper.errors import ConvexityViolation, DocumentError, NestingViolation
from helper.exit_codes import to_process_exit


def test_load_prismatoid(write_doc, square_in_square):
    path = write_doc("square.json", {**square_in_square, "metadata": {"seed": 3}})
    p, doc = load_prismatoid(path)
    assert p.B.n == 4 and p.A.n == 4
    assert p.z == 0.2
    assert doc.metadata == {"seed": 3}
    again = PrismatoidDocument.from_prismatoid(p, doc.metadata).to_data()
    assert again == {**square_in_square, "metadata": {"seed": 3}}


def test_load_polygon_accepts_both_shapes(write_doc, square_in_square):
    assert load_polygon(write_doc("p.json", {"polygon": square_in_square["A"]})).n == 4
    assert load_polygon(write_doc("q.json", square_in_square)).vertices == parse_polygon(square_in_square).vertices


@pytest.mark.parametrize(
    "data",
    [
        [],
        {"B": [[0, 0], [1, 0], [0, 1]], "A": [[0.1, 0.1], [0.2, 0.1], [0.1, 0.2]]},
        {"B": [[0, 0], [1, 0]], "A": [[0.1, 0.1], [0.2, 0.1], [0.1, 0.2]], "z": 1},
        {"B": [[0, 0], [1, 0], [0, 1]], "A": [[0.1, 0.1], [0.2, 0.1], [0.1, 0.2]], "z": -1},
        {"B": [[0, 0], [1, 0], [0, 1]], "A": [[0.1, 0.1], [0.2, 0.1], [0.1, 0.2]], "z": 1, "extra": True},
        {"B": [[0, 0, 0], [1, 0], [0, 1]], "A": [[0.1, 0.1], [0.2, 0.1], [0.1, 0.2]], "z": 1},
    ],
)
def test_malformed_documents(data):
    with pytest.raises(DocumentError) as info:
        parse_prismatoid(data)
    assert to_process_exit(info.value.code) == 2


def test_malformed_polygon_document():
    with pytest.raises(DocumentError):
        parse_polygon({"polygon": [[0, 0], [1, 0]]})


def test_unreadable_files(workdir):
    (workdir / "bad.json").write_text("{not json")
    with pytest.raises(DocumentError):
        load_prismatoid(workdir / "bad.json")
    with pytest.raises(DocumentError):
        load_prismatoid(workdir / "missing.json")


def test_invalid_geometry_keeps_its_own_error(square_in_square):
    outside = {**square_in_square, "A": [[0.5, 0.5], [1.5, 0.5], [0.5, 0.9]]}
    with pytest.raises(NestingViolation):
        parse_prismatoid(outside).to_prismatoid()
    cw = {**square_in_square, "B": square_in_square["B"][::-1]}
    with pytest.raises(ConvexityViolation):
        parse_prismatoid(cw).to_prismatoid()


def test_report_status():
    report = VerificationReport(
        seed=1,
        trials=2,
        tolerance=1e-9,
        suites=[
            SuiteResult(name="geometry", status="passed", trials=2, applicable=2),
            SuiteResult(name="documents", status="skipped"),
        ],
    )
    assert report.passed
    assert report.failures() == []
    report.suites.append(SuiteResult(name="unfold", status="failed", failures=[FailureRecord(seed=5, detail="overlap")]))
    assert not report.passed
    assert report.failures()[0][0] == "unfold"
    assert report.model_dump()["suites"][2]["failures"][0]["seed"] == 5
