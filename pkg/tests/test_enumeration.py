import random

import pytest

from frontdoor import (
    FdQuery, enumerate_fd, fd_sets_bruteforce, find_fd,
)

from helpers import rand_dag
from test_find import std_query


class TestFamilies:
    def test_reference_counts(self, graphs):
        counts = {"mediator": 1, "diamond": 13, "trident": 6, "layers": 5,
                  "relay10": 1}
        for name, want in counts.items():
            g = graphs[name]
            assert len(list(enumerate_fd(g, std_query(g)))) == want, name

    def test_matches_oracle_family(self, graphs):
        for name, g in graphs.items():
            q = std_query(g)
            got = list(enumerate_fd(g, q))
            assert len(got) == len(set(got)), name
            assert set(got) == set(fd_sets_bruteforce(g, q)), name

    def test_first_emission_is_the_maximal_set(self, graphs):
        for g in graphs.values():
            q = std_query(g)
            first = next(iter(enumerate_fd(g, q)))
            assert first == find_fd(g, q).z

    def test_deterministic_order(self, graphs):
        g = graphs["diamond"]
        q = std_query(g)
        assert list(enumerate_fd(g, q)) == list(enumerate_fd(g, q))

    def test_forced_vertices_restrict_family(self, graphs):
        g = graphs["diamond"]
        q = std_query(g, i=("B",))
        fam = list(enumerate_fd(g, q))
        assert fam and all(g.indices(["B"]) <= z for z in fam)

    def test_empty_family_when_none_exists(self, graphs):
        g = graphs["trident"]
        cur = enumerate_fd(g, std_query(g, i=("B",), r=("A", "B")))
        assert list(cur) == []
        assert cur.finds == 1


class TestCursor:
    def test_limit_prefixes_the_stream(self, graphs):
        g = graphs["diamond"]
        q = std_query(g)
        full = list(enumerate_fd(g, q))
        assert list(enumerate_fd(g, q, limit=0)) == []
        assert list(enumerate_fd(g, q, limit=3)) == full[:3]
        assert list(enumerate_fd(g, q, limit=99)) == full

    def test_negative_limit_rejected(self, graphs):
        g = graphs["diamond"]
        with pytest.raises(ValueError):
            enumerate_fd(g, std_query(g), limit=-1)

    def test_cursor_counts(self, graphs):
        g = graphs["diamond"]
        cur = enumerate_fd(g, std_query(g))
        out = list(cur)
        assert cur.emitted == len(out) == 13
        assert len(cur.delays) == 13
        assert sum(cur.delays) <= cur.finds

    def test_single_pass(self, graphs):
        g = graphs["mediator"]
        cur = enumerate_fd(g, std_query(g))
        assert iter(cur) is cur
        list(cur)
        assert list(cur) == []


class TestDelay:
    def test_reference_graphs_within_bound(self, graphs):
        for name, g in graphs.items():
            q = std_query(g)
            cur = enumerate_fd(g, q)
            list(cur)
            bound = 2 * g.node_count + 2
            assert all(d <= bound for d in cur.delays), name

    def test_random_graphs_within_bound(self):
        rng = random.Random(17)
        done = 0
        while done < 100:
            g = rand_dag(rng, 4, 12)
            obs = sorted(g.observed())
            if len(obs) < 3:
                continue
            x, y = rng.sample(obs, 2)
            q = FdQuery(frozenset([x]), frozenset([y]),
                        r=frozenset(g.default_restricted([x], [y])))
            cur = enumerate_fd(g, q, limit=40)
            list(cur)
            bound = 2 * g.node_count + 2
            assert all(d <= bound for d in cur.delays)
            done += 1
