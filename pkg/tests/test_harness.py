import json

import pytest

from sympow import SympowError
from sympow.harness import (KINDS, CorpusCase, generate_random_cases, load_corpus, run_case, run_corpus,
                            select_cases, write_corpus)

CORPUS = load_corpus()


def test_corpus_loads_with_unique_ids():
    ids = [c.id for c in CORPUS]
    assert len(ids) == len(set(ids)) >= 100


@pytest.mark.parametrize("prefix", ["snc-A-", "snc-Am-", "snc-B-", "snc-C-", "snc-E-", "mult-cmp-", "main-0",
                                    "blowup-K-", "asym-sub-", "asym-pipe-"])
def test_each_family_has_five_cases(prefix):
    assert sum(c.id.startswith(prefix) for c in CORPUS) >= 5


def test_every_kind_present():
    assert {c.kind for c in CORPUS} == set(KINDS)


def test_main_theorem_cases_pass():
    report = run_corpus(CORPUS, kind="main-theorem")
    assert report.results and report.exit_code == 0


def test_snc_b_cases_pass():
    report = run_corpus(CORPUS, pattern="snc-B-*")
    assert len(report.results) >= 5 and report.exit_code == 0
    assert all(r.id.startswith("snc-B-") for r in report.results)


def test_empty_selection():
    report = run_corpus(CORPUS, pattern="no-such-*")
    assert report.results == [] and report.exit_code == 0


def test_full_corpus_passes_in_parallel():
    report = run_corpus(CORPUS, parallelism=4)
    assert report.exit_code == 0, report.table()
    assert [r.id for r in report.results] == [c.id for c in CORPUS]


def test_sharpness_case_fails_with_witness():
    (case,) = select_cases(CORPUS, pattern="main-sharp-001")
    res = run_case(case)
    assert res.outcome == "fail" and res.verdict == "pass"
    assert "x*y*z" in res.witnesses


def test_determinism_modulo_timing():
    cases = select_cases(CORPUS, pattern="blowup-*")
    a = run_corpus(cases).to_dict(timing=False)
    b = run_corpus(cases, parallelism=3).to_dict(timing=False)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_unexpected_outcome_is_a_failure():
    case = CorpusCase("flip", "main-theorem", "Q[x,y,z] grevlex",
                      {"ideal": "x*y, x*z, y*z", "m": 2}, "fail-with-witness")
    res = run_case(case)
    assert res.outcome == "pass" and res.verdict == "fail"
    assert run_corpus([case]).exit_code == 1


def test_errors_are_reported_not_raised():
    case = CorpusCase("bad", "main-theorem", "Q[x,y] grevlex", {"ideal": "x^2", "m": 1})
    res = run_case(case)
    assert res.outcome == "error" and res.verdict == "fail"
    assert "NotSquarefree" in res.detail


def test_case_validation(tmp_path):
    with pytest.raises(SympowError):
        CorpusCase("x", "nope", "Q[x] grevlex", {})
    with pytest.raises(SympowError):
        CorpusCase("x", "blowup", "Q[x] grevlex", {}, "maybe")
    path = tmp_path / "dup.jsonl"
    write_corpus(CORPUS[:2] + CORPUS[:1], path)
    with pytest.raises(SympowError):
        load_corpus(path)


def test_random_generation_is_reproducible():
    counts = {k: 10 for k in KINDS}
    a = generate_random_cases(1, counts)
    assert [c.to_json() for c in a] == [c.to_json() for c in generate_random_cases(1, counts)]
    assert [c.to_json() for c in a] != [c.to_json() for c in generate_random_cases(2, counts)]
    assert generate_random_cases(1, {k: 0 for k in KINDS}) == []


def test_random_cases_round_trip(tmp_path):
    cases = generate_random_cases(1, {"snc-property": 10})
    assert len(cases) == 10
    path = tmp_path / "rand.jsonl"
    write_corpus(cases, path)
    back = load_corpus(path)
    assert back == cases
    assert run_corpus(back).exit_code == 0


def test_random_cases_all_kinds_pass():
    cases = generate_random_cases(7, {k: 20 for k in KINDS})
    report = run_corpus(cases)
    assert report.exit_code == 0, report.table()
