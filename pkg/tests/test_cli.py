import inspect
import json

from qvertex import cli, fock, repring, toroidal, vertex, wreath
from qvertex.cli import REGISTRY, build_parser, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mckay_pass_exit0(capsys):
    code, out, _ = run(["mckay", "--group", "cyclic:3", "--xi", "first"], capsys)
    assert code == 0 and "pass" in out


def test_cartan_json_round_trips(capsys):
    code, out, _ = run(["cartan", "--group", "cyclic:2", "--xi", "first", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    from qvertex.scalar import Laurent

    entries = [[Laurent.from_obj(e) for e in row] for row in doc["entries"]]
    qq = Laurent.q_pow(1) + Laurent.q_pow(-1)
    assert entries[0][0] == qq and entries[0][1] == Laurent.of(-2)
    # round trip: re-serialise
    assert [[e.to_obj() for e in row] for row in entries] == doc["entries"]


def test_bad_config_exit2(capsys):
    code, _, err = run(["mckay", "--group", "bt", "--xi", "second"], capsys)
    assert code == 2 and "cyclic" in err
    code, _, err = run(["positivity", "--group", "cyclic:2", "--t", "-1"], capsys)
    assert code == 2 and "t > 0" in err
    code, _, err = run(["mckay", "--group", "nope:3"], capsys)
    assert code == 2


def test_chartable_text_and_json(capsys):
    code, out, _ = run(["chartable", "--group", "bd:2"], capsys)
    assert code == 0 and "order 8" in out
    code, out, _ = run(["chartable", "--group", "bd:2", "--format", "json"], capsys)
    doc = json.loads(out)
    assert doc["order"] == 8 and doc["violations"] == []


def test_group_file_rejected_exit2(tmp_path, capsys):
    from qvertex.groups import cyclic, dump_group_file

    p = tmp_path / "g.grp"
    dump_group_file(cyclic(2), str(p))
    p.write_text(p.read_text().replace("char 0:1 0:-1", "char 0:1 0:1"))
    code, _, err = run(["chartable", "--group", f"file:{p}"], capsys)
    assert code == 2 and "orthogonality" in err


def test_isometry_per_pair_output(capsys):
    code, out, _ = run(["isometry", "--group", "cyclic:2", "--n", "1", "--k-twist", "1", "--l-twist", "0"], capsys)
    assert code == 0
    assert out.count("wreath.isometry_pair") == 4  # 2 types at n=1, all pairs


def test_toroidal_json_schema(capsys):
    code, out, _ = run(
        ["toroidal", "--group", "cyclic:2", "--variant", "plus", "--max-degree", "1", "--max-mode", "1", "--format", "json"],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert list(doc) == ["suite", "config", "checks"]
    assert doc["suite"] == "toroidal_plus"
    assert {c["id"] for c in doc["checks"]} >= {"toroidal.heisenberg", "toroidal.serre"}


def test_parser_has_all_subcommands():
    ap = build_parser()
    subactions = next(a for a in ap._actions if isinstance(a, type(ap._actions[-1]))).choices
    for name in ("chartable", "cartan", "mckay", "positivity", "heisenberg", "isometry", "ope", "toroidal", "affine", "all"):
        assert name in subactions


def check_function_names(module):
    out = set()
    for name, obj in vars(module).items():
        if not inspect.isfunction(obj) or obj.__module__ != module.__name__:
            continue
        if name.startswith("check_") or name.endswith("_check") or name in ("positivity_probe", "mckay_eigencheck"):
            out.add(name)
    return out


def test_registry_covers_every_check_operation():
    """A check function defined in the core modules but missing from the CLI
    registry is a build failure."""
    registered = {fn for fn, _ in REGISTRY.values()}
    for module in (repring, wreath, fock, vertex, toroidal):
        for name in check_function_names(module):
            if name in ("isometry_pair_report",):
                continue
            assert name in registered, f"{module.__name__}.{name} not registered for `all`"


def test_all_command_runs_registry(capsys):
    code, out, _ = run(["all", "--group", "cyclic:2", "--max-degree", "1", "--max-mode", "1"], capsys)
    assert code == 0
    seen = {line.split()[1] for line in out.splitlines() if line.startswith("[")}
    assert {"repring.mckay", "fock.heisenberg", "wreath.isometry", "vertex.qpow", "toroidal.serre"} <= seen
