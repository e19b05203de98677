"""BDeu CPT estimation and forward sampling."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from surveybn import (
    EstimationConfig,
    EstimationError,
    Dag,
    Variable,
    estimate_child_cpt,
    estimate_root_cpt,
    fit_network,
    forward_sample,
    parse_survey_csv,
    posterior_marginals,
)

from conftest import make_chain, make_fig1_binary

PAIR = (
    Variable("p", "p", ("a", "b", "c", "d", "e")),
    Variable("x", "x", ("u", "v", "w", "y", "z")),
)


def pair_dataset(rows: list[tuple[str, str]]):
    text = "p,x\n" + "\n".join(f"{p},{x}" for p, x in rows) + "\n"
    return parse_survey_csv(text, PAIR)


class TestRootEstimation:
    def test_plain_frequencies(self):
        schema = (Variable("m", "m", ("low", "high")),)
        ds = parse_survey_csv("m\nlow\nlow\nhigh\n", schema)
        cpt = estimate_root_cpt(ds, "m")
        assert cpt.table.tolist() == [[2 / 3, 1 / 3]]

    def test_unobserved_state_stays_zero(self):
        # roots are unsmoothed: 7 observations of one state -> [1, 0, 0]
        schema = (Variable("m", "m", ("a", "b", "c")),)
        ds = parse_survey_csv("m\n" + "a\n" * 7, schema)
        cpt = estimate_root_cpt(ds, "m")
        assert cpt.table.tolist() == [[1.0, 0.0, 0.0]]

    def test_missing_cells_excluded(self):
        schema = (Variable("m", "m", ("low", "high")), Variable("o", "o", ("low", "high")))
        ds = parse_survey_csv("m,o\nlow,low\n,low\nhigh,low\n", schema)
        cpt = estimate_root_cpt(ds, "m")
        assert cpt.table.tolist() == [[0.5, 0.5]]

    def test_no_observations_is_an_error(self):
        schema = (Variable("m", "m", ("low", "high")), Variable("o", "o", ("low", "high")))
        ds = parse_survey_csv("m,o\n,low\n", schema)
        with pytest.raises(EstimationError):
            estimate_root_cpt(ds, "m")


class TestChildEstimation:
    def test_bdeu_closed_form(self):
        # 7 records with p=a, 3 of them x=u, alpha=1, K=5:
        # P(u|a) = (3+1)/(7+5) = 1/3 exactly at double precision
        rows = [("a", "u")] * 3 + [("a", "v")] * 2 + [("a", "w")] * 2
        cpt = estimate_child_cpt(pair_dataset(rows), "x", ["p"], EstimationConfig(alpha=1.0))
        assert cpt.table[0, 0] == (3 + 1) / (7 + 5)
        assert cpt.table[0, 0] == 1 / 3

    def test_unobserved_row_is_uniform(self):
        rows = [("a", "u")] * 4
        cpt = estimate_child_cpt(pair_dataset(rows), "x", ["p"], EstimationConfig(alpha=1.0))
        # parent state "b" never appears: its row falls back to the prior
        assert cpt.table[1].tolist() == [1 / 5] * 5

    def test_rows_sum_to_one_analytically(self):
        rows = [("a", "u"), ("a", "v"), ("b", "w"), ("c", "z")]
        cpt = estimate_child_cpt(pair_dataset(rows), "x", ["p"], EstimationConfig(alpha=0.7))
        assert np.allclose(cpt.table.sum(axis=1), 1.0)

    def test_alpha_positive_entries_positive(self):
        rows = [("a", "u")] * 10
        cpt = estimate_child_cpt(pair_dataset(rows), "x", ["p"], EstimationConfig(alpha=0.1))
        assert (cpt.table > 0).all()

    def test_alpha_zero_exact_frequencies(self):
        # alpha=0 needs every parent configuration observed: binary parent
        schema = (Variable("p", "p", ("a", "b")), Variable("x", "x", ("u", "v")))
        text = "p,x\n" + "a,u\n" * 3 + "a,v\n" + "b,v\n"
        ds = parse_survey_csv(text, schema)
        cpt = estimate_child_cpt(ds, "x", ["p"], EstimationConfig(alpha=0.0))
        assert cpt.table[0].tolist() == [0.75, 0.25]
        assert cpt.table[1].tolist() == [0.0, 1.0]

    def test_alpha_zero_unobserved_row_is_an_error(self):
        rows = [("a", "u")] * 3
        with pytest.raises(EstimationError, match="unobserved"):
            estimate_child_cpt(pair_dataset(rows), "x", ["p"], EstimationConfig(alpha=0.0))

    def test_negative_alpha_rejected(self):
        with pytest.raises(ValueError):
            EstimationConfig(alpha=-1.0)


class TestFitNetwork:
    def test_fits_every_node(self):
        net = make_chain()
        ds = forward_sample(net, 500, seed=1)
        fitted = fit_network(net.dag, ds)
        assert set(fitted.cpts) == {"A", "B"}
        assert fitted.cpts["B"].parents == ("A",)

    def test_unknown_node_rejected(self):
        net = make_chain()
        ds = forward_sample(net, 50, seed=1)
        with pytest.raises(EstimationError, match="ghost"):
            fit_network(Dag(("A", "B", "ghost"), (("A", "B"),)), ds)

    def test_error_names_the_node(self):
        schema = (Variable("m", "m", ("low", "high")), Variable("o", "o", ("low", "high")))
        ds = parse_survey_csv("m,o\n,low\n", schema)
        with pytest.raises(EstimationError, match="'m'"):
            fit_network(Dag(("m", "o"), (("m", "o"),)), ds)

    def test_fitted_tables_converge_to_generator(self):
        net = make_fig1_binary()
        ds = forward_sample(net, 30_000, seed=3)
        fitted = fit_network(net.dag, ds)
        for node in net.dag.nodes:
            gap = np.abs(fitted.cpts[node].table - net.cpts[node].table).max()
            assert gap < 0.05, node

    @given(alpha=st.floats(0.01, 10.0))
    @settings(max_examples=20, deadline=None)
    def test_any_alpha_yields_valid_distributions(self, alpha):
        net = make_chain()
        ds = forward_sample(net, 200, seed=7)
        fitted = fit_network(net.dag, ds, EstimationConfig(alpha=alpha))
        for cpt in fitted.cpts.values():
            assert np.allclose(cpt.table.sum(axis=1), 1.0)
            assert (cpt.table >= 0).all()


class TestForwardSampling:
    def test_deterministic_per_seed(self, fig1_binary):
        a = forward_sample(fig1_binary, 100, seed=5)
        b = forward_sample(fig1_binary, 100, seed=5)
        assert np.array_equal(a.codes, b.codes)

    def test_seeds_differ(self, fig1_binary):
        a = forward_sample(fig1_binary, 100, seed=5)
        b = forward_sample(fig1_binary, 100, seed=6)
        assert not np.array_equal(a.codes, b.codes)

    def test_no_missing_cells(self, fig1_binary):
        ds = forward_sample(fig1_binary, 1000, seed=0)
        assert (ds.codes >= 0).all()

    def test_positive_n_required(self, chain):
        with pytest.raises(ValueError):
            forward_sample(chain, 0, seed=0)

    def test_marginals_match_exact_inference(self, fig1_binary):
        # sampled frequencies converge on the variable-elimination marginals
        ds = forward_sample(fig1_binary, 50_000, seed=11)
        exact = posterior_marginals(fig1_binary).marginals
        for i, var in enumerate(ds.variables):
            freq = np.bincount(ds.codes[:, i], minlength=var.k) / ds.n_total
            assert np.abs(freq - exact[var.id]).max() < 0.01, var.id

    def test_deterministic_cpt_propagates(self):
        net = make_chain()
        # make B a deterministic copy of A
        from surveybn import BayesianNetwork, Cpt

        det = BayesianNetwork(
            net.variables,
            net.dag,
            {
                "A": Cpt("A", (), [[0.5, 0.5]]),
                "B": Cpt("B", ("A",), [[1.0, 0.0], [0.0, 1.0]]),
            },
        )
        ds = forward_sample(det, 500, seed=2)
        assert np.array_equal(ds.codes[:, 0], ds.codes[:, 1])
