"""Import the compiled extension and check a few known values on K8.

Build first with `cargo build -p spatial-linking-py --release` (or debug).
"""

import importlib
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def locate():
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libspatial_linking_py.so"
        if lib.exists():
            return lib
    sys.exit("libspatial_linking_py.so not found; run cargo build -p spatial-linking-py")


def main():
    tmp = tempfile.mkdtemp()
    shutil.copy(locate(), pathlib.Path(tmp) / "spatial_linking_py.so")
    sys.path.insert(0, tmp)
    sl = importlib.import_module("spatial_linking_py")

    e = sl.Embedding.moment(8)
    assert e.n == 8 and e.is_rectilinear and e.validate() == []
    again = sl.Embedding.from_json(e.to_json())
    assert again.to_json() == e.to_json()

    a = sl.Analyzer(e)
    assert a.class_sum("lk2", 3, 3) == 28
    assert a.class_sum("lk2", 3, 4) == 112
    assert a.class_sum("lk2", 4, 4) == 56

    pairs = a.linking_numbers(4, 4)
    assert len(pairs) == len(sl.enumerate_disjoint_pairs(8, 4, 4)) == 315
    assert ([1, 3, 5, 7], [2, 4, 6, 8], -2) in pairs

    knots = a.a2_values(8)
    assert len(knots) == len(sl.enumerate_cycles(8, 8)) == 2520

    rows = a.verify()
    bad = [r for r in rows if r.status == "violated"]
    assert not bad, bad
    assert a.verify_csv().startswith("claim_id,n,p,q,statistic,status,lhs,rhs,witness\n")

    try:
        sl.Embedding.moment(4, [1, 2, 2, 3])
    except ValueError:
        pass
    else:
        raise AssertionError("repeated parameter accepted")

    print(f"ok: {len(rows)} verification rows, none violated")


if __name__ == "__main__":
    main()
