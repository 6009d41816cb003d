"""Drift guards: the JSON corpus must stay in sync with the in-code catalog."""
import json
from pathlib import Path

from liegrpd import catalog
from liegrpd.cli import main
from liegrpd.groupoids import action_to_json
from liegrpd.lie import algebra_from_json, algebra_to_json

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

ALGEBRA_FILES = {
    "heisenberg.json": catalog.heisenberg,
    "axb.json": catalog.axb,
    "e2.json": catalog.euclid2,
    "filiform4.json": catalog.filiform4,
    "complex_borel.json": catalog.complex_borel,
}

ACTION_FILES = {
    "negation_groupoid.json": catalog.negation_action,
    "z4_parity.json": catalog.z4_parity_action,
    "s3_natural.json": catalog.s3_natural_action,
}


def canonical(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


class TestAlgebraFiles:
    def test_every_algebra_file_matches_catalog(self):
        for fname, builder in ALGEBRA_FILES.items():
            on_disk = (CORPUS / fname).read_text()
            assert on_disk == canonical(algebra_to_json(builder())), fname

    def test_round_trip(self):
        for fname in ALGEBRA_FILES:
            doc = json.loads((CORPUS / fname).read_text())
            L = algebra_from_json(doc)
            assert algebra_to_json(L) == doc, fname

    def test_files_are_cli_consumable(self, tmp_path):
        for fname in ALGEBRA_FILES:
            code = main(
                ["lie", "validate", "--in", str(CORPUS / fname),
                 "--out", str(tmp_path / "o.json")]
            )
            assert code == 0, fname


class TestActionFiles:
    def test_every_action_file_matches_catalog(self):
        for fname, builder in ACTION_FILES.items():
            on_disk = (CORPUS / fname).read_text()
            assert on_disk == canonical(action_to_json(builder())), fname

    def test_files_are_cli_consumable(self, tmp_path):
        for fname in ACTION_FILES:
            code = main(
                ["grpd", "validate", "--in", str(CORPUS / fname),
                 "--out", str(tmp_path / "o.json")]
            )
            assert code == 0, fname


def test_no_stray_files():
    known = set(ALGEBRA_FILES) | set(ACTION_FILES)
    assert {p.name for p in CORPUS.glob("*.json")} == known
