from checks.kuperberg import NORMALIZATIONS, kuperberg_all, kuperberg_suite


def test_signed_normalization_satisfies_every_relation():
    report = kuperberg_suite("signed")
    assert report.ok, report.summary()
    assert {result.name for result in report.results} == {
        "positive_crossing",
        "negative_crossing",
        "circle",
        "bigon",
        "square",
        "skein",
        "kink",
    }


def test_unsigned_normalization_breaks_vertex_relations():
    report = kuperberg_suite("unsigned")
    assert not report.ok
    assert {"positive_crossing", "negative_crossing", "bigon"} <= set(report.failed)
    assert not {"circle", "skein", "kink"} & set(report.failed)


def test_all_normalizations_are_reported():
    reports = kuperberg_all()
    assert set(reports) == set(NORMALIZATIONS)
    assert reports["signed"].summary()["failed"] == []
