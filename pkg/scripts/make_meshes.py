"""Write a small gallery of meshes and their verification reports.

    python3 scripts/make_meshes.py --out meshes --grid 64
"""

import argparse
from pathlib import Path

from s3tori.mesh import RunConfig, build_mesh, export, verification_report

GALLERY = {
    "clifford": dict(e=0.0),
    "deformed_e1": dict(k=1, l=1, e=1.0),
    "deformed_e5": dict(k=1, l=1, e=5.0),
    "strip_E04": dict(k=0, l=1, E=0.4),
    "closed_4_3": dict(k=0, l=1, p=4, q=3),
    "patch_3_2": dict(k=3, l=2, E=0.2),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="meshes")
    ap.add_argument("--grid", type=int, default=64)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, kw in GALLERY.items():
        config = RunConfig(grid=(args.grid, args.grid), **kw)
        mesh, _ = build_mesh(config)
        report = verification_report(config)
        export(mesh, "obj", out / f"{name}.obj")
        export(mesh, "json", out / f"{name}.json", report=report)
        print(f"{name:12s} {mesh.metadata['domain']:13s} faces {len(mesh.faces):6d} "
              f"residual {report['max_minimality_residual']:.1e} "
              f"{'ok' if report['passed'] else 'FAILED'}")


if __name__ == "__main__":
    main()
