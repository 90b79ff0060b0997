import json

import pytest

from hahnval import checks, cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestExamples:
    def test_group_fr_json(self, capsys):
        code, out = run(capsys, "group", "fr", "--x", "1@G2.0.y", "--r", "6", "--json")
        assert code == 0
        assert json.loads(out) == {"cut": "above(G2.0.y)"}

    def test_elem_cmp_text(self, capsys):
        code, out = run(capsys, "elem", "cmp", "--a", "0", "--b", "0")
        assert code == 0
        assert out.strip() == "eq"

    def test_report_prestel_forward_witness(self, capsys):
        code, out = run(
            capsys, "report", "prestel", "f", "--samples", "50", "--seed", "7", "--json"
        )
        assert code == 0
        data = json.loads(out)
        assert data["forward"]["status"] == "fails"
        assert data["forward"]["witness"] == "1*t^(-1@G1.0.y0)"
        assert data["backward"] == {"status": "holds-on-samples"}
        assert data["samples"] == 50 and data["seed"] == 7

    def test_group_lemma(self, capsys):
        code, out = run(
            capsys,
            "group", "lemma", "--x", "1@G2.0.y", "--y", "1@G1.0.y0", "--r", "6", "--json",
        )
        assert code == 0
        assert json.loads(out) == {"empty": True}

    def test_embed(self, capsys):
        code, out = run(capsys, "embed", "f3", "--a=-1@G1.0.y0", "--json")
        assert code == 0
        assert json.loads(out) == {"image": "-1@G2.0.y"}

    def test_series_chain(self, capsys):
        code, out = run(
            capsys, "series", "member", "--a", "1*t^(-1@G1.0.y0)", "--ring", "w", "--json"
        )
        assert code == 0 and json.loads(out)["member"] is True
        code, out = run(
            capsys, "series", "member", "--a", "1*t^(-1@G1.0.y0)", "--ring", "v", "--json"
        )
        assert code == 0 and json.loads(out)["member"] is False

    def test_formula_eval(self, capsys):
        code, out = run(
            capsys,
            "formula", "eval", "--text", "Div_3(x)", "--assign", "x=2@G2.0.x", "--json",
        )
        assert code == 0 and json.loads(out)["value"] is True

    def test_eta_check(self, capsys):
        code, out = run(
            capsys,
            "formula", "eta-check",
            "--x", "0", "--u", "0", "--t", "0",
            "--block1", "0;0;-1/2*t^(0);-1/2*t^(0)",
            "--block2", "0;0;inv;inv",
            "--json",
        )
        assert code == 0 and json.loads(out)["holds"] is True


class TestExitCodes:
    def test_parse_error_is_usage(self, capsys):
        code = cli.main(["elem", "cmp", "--a", "junk", "--b", "0"])
        assert code == 2

    def test_precondition_error_is_usage(self, capsys):
        code = cli.main(["group", "fr", "--x", "2@G2.0.y", "--r", "2"])
        assert code == 2

    def test_passing_suite_exits_zero(self, capsys):
        code, out = run(capsys, "check", "lemma", "--samples", "10", "--seed", "1", "--json")
        assert code == 0
        assert json.loads(out)["passed"] is True

    def test_failing_suite_exits_one(self, capsys, monkeypatch):
        def broken(samples, seed):
            return {
                "suite": "lemma",
                "samples": samples,
                "seed": seed,
                "passed": False,
                "checks": [
                    {"name": "x", "passed": False, "checked": 1, "failures": 1, "witness": "w"}
                ],
            }

        monkeypatch.setitem(checks.SUITES, "lemma", broken)
        code, out = run(capsys, "check", "lemma", "--samples", "1", "--seed", "1", "--json")
        assert code == 1
        assert json.loads(out)["passed"] is False

    def test_unknown_subcommand_is_usage(self, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(["group", "warp"])
        assert info.value.code == 2


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ("check", "lemma", "--samples", "40", "--seed", "5"),
            ("check", "construction", "--samples", "25", "--seed", "5"),
            ("check", "axioms", "--samples", "40", "--seed", "5"),
            ("report", "prestel", "f", "--samples", "40", "--seed", "5"),
            ("report", "prestel", "g", "--samples", "40", "--seed", "5"),
        ],
    )
    def test_byte_identical_json(self, capsys, argv):
        first = run(capsys, *argv, "--json")
        second = run(capsys, *argv, "--json")
        assert first == second
        json.loads(first[1])


OPERATIONS = [
    "coefficients.make",
    "coefficients.add",
    "coefficients.neg",
    "coefficients.cmp",
    "coefficients.divisible",
    "coefficients.coset_witness",
    "spine.point_cmp",
    "spine.label",
    "spine.successor",
    "spine.definable_k",
    "spine.cut_member",
    "spine.cut_cmp",
    "oag.add",
    "oag.neg",
    "oag.cmp",
    "oag.divisible",
    "oag.leading_obstruction",
    "oag.fr",
    "oag.lemma_rhs",
    "oag.sim_r",
    "oag.in_gamma1_direct",
    "oag.in_gamma1_definable",
    "oag.apply_embedding",
    "oag.project_quotient",
    "series.s_mul",
    "series.s_add",
    "series.s_neg",
    "series.val",
    "series.w_val",
    "series.in_O",
    "series.residue_w",
    "series.s_inverse",
    "series.apply_field_embedding",
    "series.prestel_report",
    "formulas.parse",
    "formulas.print_formula",
    "formulas.eval_qf",
    "formulas.eta",
    "formulas.check_eta_witness",
    "formulas.eval_fr_formula",
]


def test_every_operation_reachable_from_dispatch_table():
    covered = set()
    for handler in cli.HANDLERS.values():
        covered.update(handler.ops)
    missing = [op for op in OPERATIONS if op not in covered]
    assert not missing, f"operations with no subcommand: {missing}"


def test_dispatch_table_matches_parser():
    # every declared route must resolve through main() without KeyError
    parser = cli._build_parser()
    for key in cli.HANDLERS:
        assert key[0] in ("elem", "group", "embed", "series", "formula", "check", "report")
