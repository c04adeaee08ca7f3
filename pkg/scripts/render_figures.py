"""Write SVG cross-sections of the rank-2 and rank-3 fixtures."""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

from stackyfan import io
from stackyfan.render import render_svg
from stackyfan.stacky import stacky_star_subdivide


@dataclass(frozen=True)
class Config:
    out_dir: Path = Path("figures")
    plane: tuple[int, int, int] = (1, 1, 1)


def main(cfg: Config) -> None:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    jobs = []
    for name in ("ex_6_4_sigma", "ex_6_4_sigma_prime", "ex_6_4_sigma_dprime"):
        doc = io.fixture(name)
        jobs.append((name, doc.stacky_fan.fan, doc.labels(), cfg.plane))
    doc = io.fixture("ex_4_9")
    jobs.append(("ex_4_9", doc.stacky_fan.fan, doc.labels(), None))
    sub = doc.evolve(stacky_star_subdivide(doc.stacky_fan, [0, 1]).stacky_fan)
    jobs.append(("ex_4_9_subdivided", sub.stacky_fan.fan, sub.labels(), None))
    for name, fan, labels, plane in jobs:
        path = cfg.out_dir / f"{name}.svg"
        path.write_text(render_svg(fan, labels, plane, title=name))
        print(path)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=Config.out_dir)
    ap.add_argument("--plane", default="1,1,1")
    a = ap.parse_args()
    main(Config(a.out_dir, tuple(int(x) for x in a.plane.split(","))))
