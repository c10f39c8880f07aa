"""Separation certificates, epsilon chains, and the combined UD verdict."""

import math

import numpy as np
import pytest

import lgcarpet as lg
from lgcarpet import synth
from lgcarpet.carpet import CarpetSpec, RowSpec
from lgcarpet.errors import ChainUnavailable, EmptyAttractor


def all_empty_spec():
    return CarpetSpec(rows=(RowSpec(b=0.5, cells=()), RowSpec(b=0.5, cells=())))


class TestEmptyRows:
    def test_canonical_specs(self, cd, mcm, mixed, touching):
        assert lg.empty_rows(cd) == [2]
        assert lg.empty_rows(mcm) == []
        assert lg.empty_rows(mixed) == [2]
        assert lg.empty_rows(touching) == [2]


class TestSeparationCertificate:
    def test_cantor_dust_certified_at_depth_1(self, cd):
        cert = lg.certify_totally_disconnected(cd)
        assert cert.status == "certified"
        assert cert.depth == 1
        assert cert.diameter_bound == 0.0
        assert cert.bounds_by_depth == ()

    def test_certified_separation_persists_one_level_deeper(self, cd):
        # independent check of what the certificate promises
        cert = lg.certify_totally_disconnected(cd)
        rects = [c.rect for c in lg.enumerate_depth(cd, cert.depth + 1)]
        labels = lg.component_labels(rects, 0.0)
        assert len(np.unique(labels)) == len(rects)

    def test_touching_columns_never_certified(self, touching):
        cert = lg.certify_totally_disconnected(touching, max_depth=6)
        assert cert.status == "diameter_bound"
        assert cert.depth == 6
        assert len(cert.bounds_by_depth) == 6
        bounds = cert.bounds_by_depth
        assert all(b2 < b1 for b1, b2 in zip(bounds, bounds[1:]))
        assert cert.diameter_bound == bounds[-1]

    def test_touching_bound_value(self, touching):
        # depth 1: two touching quarter-width columns of height 1/2
        cert = lg.certify_totally_disconnected(touching, max_depth=1)
        assert cert.bounds_by_depth[0] == pytest.approx(math.hypot(0.5, 0.5))

    def test_bad_max_depth(self, cd):
        with pytest.raises(ValueError):
            lg.certify_totally_disconnected(cd, max_depth=0)

    def test_empty_attractor(self):
        with pytest.raises(EmptyAttractor):
            lg.certify_totally_disconnected(all_empty_spec())


class TestEpsilonChain:
    @pytest.mark.parametrize("eps0", [0.5, 0.2, 0.1])
    def test_chain_invariants(self, mcm, eps0):
        ch = lg.build_epsilon_chain(mcm, eps0)
        assert ch.epsilon0 == eps0
        assert ch.n > 2.0 / eps0
        assert len(ch.points) == ch.n + 1
        assert ch.points[0] == ch.xi
        assert ch.points[-1] == ch.xi_prime
        assert ch.xi != ch.xi_prime
        assert ch.max_step_ratio <= eps0 + 1e-6
        for x, y in ch.points:
            assert 0.0 <= x <= 1.0 and 0.0 <= y <= 1.0
        # the word T really compresses width below eps0/2 relative to height
        ratio = max(max(c.a for c in row.cells) / row.b for row in mcm.rows)
        assert ratio ** ch.ell <= eps0 / 2.0

    def test_pinned_shapes(self, mcm):
        ch = lg.build_epsilon_chain(mcm, 0.5)
        assert (ch.n, ch.ell, len(ch.points)) == (5, 4, 6)
        ch = lg.build_epsilon_chain(mcm, 0.1)
        assert (ch.n, ch.ell, len(ch.points)) == (21, 8, 22)

    def test_truncation_radius_is_small(self, mcm):
        ch = lg.build_epsilon_chain(mcm, 0.5)
        assert 0.0 < ch.truncation_radius < 1e-10
        assert ch.step_slack == pytest.approx(4.0 * ch.truncation_radius)

    def test_steps_shrink_with_eps0(self, mcm):
        r1 = lg.build_epsilon_chain(mcm, 0.5).max_step_ratio
        r2 = lg.build_epsilon_chain(mcm, 0.1).max_step_ratio
        assert r2 < r1

    def test_unavailable_with_empty_row(self, cd):
        with pytest.raises(ChainUnavailable):
            lg.build_epsilon_chain(cd, 0.5)

    @pytest.mark.parametrize("eps0", [0.0, 1.0, -0.3, 2.0])
    def test_epsilon_domain(self, mcm, eps0):
        with pytest.raises(ValueError):
            lg.build_epsilon_chain(mcm, eps0)


class TestVerdicts:
    def test_cantor_dust(self, cd):
        v = lg.check_uniform_disconnectedness(cd)
        assert v.kind == "CertifiedUD"
        assert v.quasisymmetric_to_cantor is True
        assert v.depth_used == 1
        assert v.diameter_bound == 0.0
        assert v.evidence == {"empty_rows": [2], "td_depth": 1}

    def test_mixed_rows(self, mixed):
        v = lg.check_uniform_disconnectedness(mixed)
        assert v.kind == "CertifiedUD"
        assert v.depth_used == 1
        assert v.quasisymmetric_to_cantor is True

    def test_three_map_carpet(self, mcm):
        v = lg.check_uniform_disconnectedness(mcm)
        assert v.kind == "CertifiedNotUD"
        assert v.quasisymmetric_to_cantor is False
        chain = v.evidence["chain"]
        assert chain["epsilon0"] == 0.1
        assert (chain["n"], chain["ell"], chain["points"]) == (21, 8, 22)
        assert chain["max_step_ratio"] <= 0.1 + 1e-6
        assert "reason" in v.evidence

    def test_touching_columns(self, touching):
        v = lg.check_uniform_disconnectedness(touching)
        assert v.kind == "Undetermined"
        assert v.quasisymmetric_to_cantor is False
        assert v.evidence["empty_rows"] == [2]
        bounds = v.evidence["bounds_by_depth"]
        assert len(bounds) == 8
        assert all(b2 < b1 for b1, b2 in zip(bounds, bounds[1:]))
        assert bounds[0] == pytest.approx(math.hypot(0.5, 0.5))
        assert "note" in v.evidence
        assert v.diameter_bound == bounds[-1]

    def test_empty_attractor_propagates(self):
        with pytest.raises(EmptyAttractor):
            lg.check_uniform_disconnectedness(all_empty_spec())

    def test_depth_budget_respected(self, touching):
        v = lg.check_uniform_disconnectedness(touching, max_depth=3)
        assert len(v.evidence["bounds_by_depth"]) == 3
