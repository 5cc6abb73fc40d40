#!/usr/bin/env python3
"""Smoke test for the taxsim Python extension.

Build the module first, then run this script:

    cargo build -p taxsim-py --release
    python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
FIXTURES = REPO / "crates" / "core" / "fixtures"


def import_taxsim():
    candidates = [
        REPO / "target" / "release" / "libtaxsim.so",
        REPO / "target" / "debug" / "libtaxsim.so",
        REPO / "target" / "release" / "libtaxsim.dylib",
        REPO / "target" / "debug" / "libtaxsim.dylib",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("no built extension found; run: cargo build -p taxsim-py --release")
    stage = Path(tempfile.mkdtemp(prefix="taxsim-py-"))
    shutil.copy(built, stage / "taxsim.so")
    sys.path.insert(0, str(stage))
    import taxsim

    return taxsim


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol, f"{a} != {b} (+/- {tol})"


def main():
    taxsim = import_taxsim()

    # taxonomy structure
    tax = taxsim.Taxonomy.load(str(FIXTURES / "medical.tax"))
    assert len(tax) == 7
    assert tax.senses("doctor") == ["DOCTOR1", "DOCTOR2"]
    assert tax.subsumers("DOCTOR1") == ["DOCTOR1", "HEALTH_PROFESSIONAL", "PERSON"]
    assert tax.shortest_path_edges("DOCTOR1", "NURSE1") == 2
    assert tax.max_depth() == 2

    # published information-content values
    model = taxsim.ProbabilityModel.load(tax, str(FIXTURES / "medical.prob"))
    approx(model.ic(tax, "HEALTH_PROFESSIONAL"), 8.844)

    # word similarity and the most informative subsumer
    r = taxsim.wsim(tax, model, "doctor", "nurse")
    approx(r["value"], 8.844)
    assert r["subsumers"] == ["HEALTH_PROFESSIONAL"]
    assert r["sense_pair"] == ("DOCTOR1", "NURSE1")
    value, _ = taxsim.sim(tax, model, "DOCTOR1", "NURSE1", measure="lin")
    approx(value, 2 * 8.844 / 24)

    # noun-group sense confidence
    g = taxsim.disambiguate_group(tax, model, ["doctor", "nurse", "actor"])
    approx(g["phi"]["doctor"]["DOCTOR1"], 1.0)
    approx(g["phi"]["doctor"]["DOCTOR2"], 2.005 / (8.844 + 2.005))
    assert taxsim.scale_confidence(g["phi"]["doctor"]["DOCTOR2"]) == 1
    assert taxsim.scale_confidence(1.0) == 5

    # weighted similarity with hand weights
    value, fallback = taxsim.wsim_weighted(
        tax, model, "doctor", "nurse",
        {"HEALTH_PROFESSIONAL": 0.9, "PERSON": 0.1},
    )
    approx(value, 8.1601)
    assert not fallback

    # selectional association and coordination bracketing
    ctax = taxsim.Taxonomy.load(str(FIXTURES / "coord.tax"))
    cmodel = taxsim.ProbabilityModel.load(ctax, str(FIXTURES / "coord.prob"))
    cooc = taxsim.CoocModel.load(ctax, str(FIXTURES / "coord.pairs"))
    a = cooc.assoc_word(ctax, "mail", "fraud")
    assert a > 2.0, a
    d = taxsim.resolve_coordination(
        ctax, cmodel, cooc,
        "products", "services", "units",
        n0="telecommunications", numbers=("pl", "pl", "pl"),
    )
    assert d["choice"] == "12" and d["fired_by"] == "weighted-sim", d
    d = taxsim.resolve_coordination(
        ctax, cmodel, cooc, "business", "university", "groups",
        numbers=("sg", "sg", "pl"),
    )
    assert d["choice"] == "12" and d["fired_by"] == "number", d

    # benchmark correlations
    rs = taxsim.eval_published()
    approx(rs["information-content"], 0.7911, 0.005)
    approx(rs["edge"], 0.6645, 0.005)
    approx(rs["probability"], 0.6671, 0.005)

    # live evaluation plus plain Pearson
    pairs = [
        ("television", "radio", 3.8),
        ("mail", "securities", 3.0),
        ("corn", "peanut", 3.5),
        ("butter", "syrup", 2.8),
        ("product", "service", 2.5),
        ("television", "butter", 0.4),
    ]
    r, items, excluded = taxsim.eval_live(ctax, cmodel, pairs)
    assert items == 6 and not excluded
    approx(r, 0.6351267738692212)
    approx(taxsim.pearson([1.0, 2.0, 3.0], [2.0, 4.0, 7.0]), 0.9933992677987828)

    # edge measures
    assert taxsim.wsim_edge(tax, "doctor", "nurse") == 2 * 2 - 2
    approx(taxsim.wsim_lc(tax, "doctor", "nurse", log_base=2.0), -math.log2(2 / 4))

    print("smoke test passed")


if __name__ == "__main__":
    main()
