import json
import pathlib
import subprocess
import os

import jsonschema
import pytest
from referencing import Registry, Resource

import teichforge as tf

ROOT = pathlib.Path(__file__).resolve().parents[2]
SCHEMAS = ROOT / "schemas"
DATA = ROOT / "data"


def validator(name):
    registry = Registry()
    for p in SCHEMAS.glob("*.schema.json"):
        registry = registry.with_resource(p.name, Resource.from_contents(json.loads(p.read_text())))
    schema = json.loads((SCHEMAS / name).read_text())
    return jsonschema.Draft202012Validator(schema, registry=registry)


@pytest.fixture(scope="module")
def delta():
    return json.loads((DATA / "delta_index2.json").read_text())


@pytest.fixture(scope="module")
def cert(delta):
    return tf.construct(delta)


def test_certificate_round_trip(delta, cert):
    validator("certificate.schema.json").validate(cert)
    assert cert["version"] == tf.CERTIFICATE_VERSION
    assert not cert["toy"]
    assert cert["alpha_classes"]["k"] == 2
    assert tf.construct(delta) == cert
    report = tf.verify(cert, delta)
    validator("verify_report.schema.json").validate(report)
    assert report["pass"]


def test_tampered_certificate_fails(delta, cert):
    bad = json.loads(json.dumps(cert))
    bad["primes"]["ell"] += 2
    report = tf.verify(bad, delta)
    assert not report["pass"]
    assert any("primes" in c["detail"] for c in report["checks"] if not c["pass"])


def test_stabilizer_of_lambda(cert):
    r = tf.stabilizer(cert)
    validator("veech.schema.json").validate(r)
    assert r["projective_orbit_size"] == 12
    assert r["minus_identity_stabilizes"]


def test_toy_certificate_warns(delta):
    toy = tf.construct(delta, toy_primes=[2, 1, 1, 1], refine=False)
    assert toy["toy"] and not toy["faithful"]
    report = tf.verify(toy, delta)
    assert report["pass"]
    assert report["warnings"]


def test_gamma2_words():
    assert tf.gamma2_word([5, 2, 2, 1]) == ("G1G2", 1)
    word, sign = tf.gamma2_word([-1, 0, 0, -1])
    assert sign == -1
    with pytest.raises(ValueError):
        tf.gamma2_word([1, 1, 0, 1])


def test_origami_and_decompose(delta):
    r = tf.veech_of_origami("2\n1 0\n0 1\n")
    assert r["orbit_size"] == 3
    validator("origami.schema.json").validate(r["origami"])
    classes = tf.decompose(delta, "G1G2")
    assert sum(c["size"] for c in classes) == 2


def test_bad_input_raises(delta):
    bad = dict(delta, degree=3)
    with pytest.raises(ValueError):
        tf.construct(bad)
    with pytest.raises(ValueError):
        tf.construct("{not json")


def test_atlas_and_suites():
    a = tf.atlas()
    assert len(a["punctures"]) == 4
    assert "lemma3" in tf.suite_names()
    r = tf.run_suite("lemma3", samples=0)
    assert r["pass"] and r["warnings"]


def test_cli_outputs_match_schemas(tmp_path):
    cli = os.environ.get("TEICHFORGE_CLI")
    if not cli:
        pytest.skip("TEICHFORGE_CLI not set")

    def run(*args, code=0):
        p = subprocess.run([cli, *args], capture_output=True, text=True)
        assert p.returncode == code, p.stderr
        return json.loads(p.stdout) if p.stdout.strip() else None

    out = tmp_path / "c.json"
    run("construct", "--delta", str(DATA / "delta_index2.json"), "--out", str(out))
    validator("certificate.schema.json").validate(json.loads(out.read_text()))
    validator("verify_report.schema.json").validate(
        run("verify", "--cert", str(out), "--delta", str(DATA / "delta_index2.json")))
    validator("suite_report.schema.json").validate(run("lemmas", "--suite", "lemma1", "--samples", "2"))
    validator("veech.schema.json").validate(run("veech", "--origami", str(DATA / "origami_l3.txt")))
    validator("origami.schema.json").validate(
        run("export", "--table", str(DATA / "pi14.json"), "--format", "json"))
    validator("delta.schema.json").validate(json.loads((DATA / "delta_index2.json").read_text()))
    bad = tmp_path / "bad.json"
    bad.write_text("[1,")
    validator("error.schema.json").validate(run("construct", "--delta", str(bad), code=2))
