import itertools
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from delsarte.errors import DomainError, SizeCapExceeded
from delsarte.oracle import FamilySpec, format_report, max_code_size, sandwich_check, thread_count
from delsarte.scheme import ExplicitScheme, hamming_space, johnson_space


def hamming_dist(x, y):
    return bin(x ^ y).count("1")


@pytest.mark.parametrize(
    "n,d,expected",
    # known binary values A(n, d)
    [(4, 2, 8), (3, 3, 2), (5, 3, 4), (6, 3, 8), (7, 3, 16), (7, 4, 8), (8, 5, 4), (9, 5, 6), (10, 5, 12),
     (10, 6, 6), (6, 6, 2), (5, 1, 32)],
)
def test_binary_hamming_values(n, d, expected):
    res = max_code_size(FamilySpec("hamming", n, q=2), d)
    assert res.proven and res.size == expected == len(res.witness)
    for x, y in itertools.combinations(res.witness, 2):
        assert hamming_dist(x, y) >= d


@pytest.mark.parametrize("n,q,d,expected", [(3, 3, 2, 9), (3, 3, 3, 3), (4, 3, 3, 9), (2, 4, 2, 4)])
def test_qary_values(n, q, d, expected):
    res = max_code_size(FamilySpec("hamming", n, q=q), d)
    assert res.proven and res.size == expected


def networkx_max_code(dist, d):
    G = nx.Graph()
    N = len(dist)
    G.add_nodes_from(range(N))
    G.add_edges_from((i, j) for i in range(N) for j in range(i + 1, N) if dist[i][j] >= d)
    return nx.max_weight_clique(G, weight=None)[1]


@pytest.mark.parametrize("n,a,d", [(4, 2, 2), (6, 2, 2), (6, 3, 2), (7, 3, 2), (8, 3, 2), (8, 4, 3)])
def test_johnson_against_networkx(n, a, d):
    spec = FamilySpec("johnson", n, a=a)
    res = max_code_size(spec, d)
    assert res.proven
    assert res.size == networkx_max_code(spec.distance_matrix(), d)


def test_explicit_scheme_path():
    s = ExplicitScheme(johnson_space(6, 3).dist)
    res = max_code_size(s, 2)
    assert res.size == networkx_max_code(s.dist, 2) and res.proven
    assert max_code_size(hamming_space(3, 2), 1).size == 8


def test_node_limit_reports_lower_bound():
    res = max_code_size(FamilySpec("hamming", 9, q=2), 3, node_limit=1000)
    assert not res.proven
    assert res.size <= 40
    for x, y in itertools.combinations(res.witness, 2):
        assert hamming_dist(x, y) >= 3


def test_domain_errors():
    with pytest.raises(DomainError):
        max_code_size(FamilySpec("hamming", 4, q=2), 5)
    with pytest.raises(SizeCapExceeded):
        FamilySpec("hamming", 12, q=4).distance_matrix()
    with pytest.raises(DomainError):
        FamilySpec("johnson", 5, a=3)
    with pytest.raises(DomainError):
        FamilySpec("grassmann", 5)


def test_thread_count(monkeypatch):
    monkeypatch.setenv("DELSARTE_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("DELSARTE_THREADS", "0")
    with pytest.raises(DomainError):
        thread_count()


def test_threads_do_not_change_value(monkeypatch):
    spec = FamilySpec("hamming", 5, q=3)
    monkeypatch.setenv("DELSARTE_THREADS", "1")
    one = max_code_size(spec, 3)
    monkeypatch.setenv("DELSARTE_THREADS", "4")
    four = max_code_size(spec, 3)
    assert one.size == four.size and one.proven and four.proven


def test_sandwich_examples():
    r = sandwich_check(FamilySpec("hamming", 7, q=2), 3)
    assert r.oracle.size == r.lp == r.hamming == 16
    assert r.lp <= r.eb and r.lp <= r.mrrw
    j = sandwich_check(FamilySpec("johnson", 4, a=2), 2)
    assert j.oracle.size == 2 and 2 <= j.lp <= j.hamming
    text = format_report([r, j])
    lines = text.splitlines()
    assert lines[0].split() == ["d", "oracle", "lp", "hamming", "eb", "mrrw"]
    assert lines[1].split()[:4] == ["3", "16", "16", "16"]


def test_sandwich_without_oracle():
    r = sandwich_check(FamilySpec("hamming", 8, q=2), 4, with_oracle=False)
    assert r.oracle is None and r.lp == 16
    assert r.hamming == Fraction(256, 9) and r.eb == Fraction(512, 7) and r.mrrw == 72
    assert format_report([r]).splitlines()[1].split()[1] == "-"
