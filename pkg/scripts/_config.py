"""Turn a config dataclass into command line flags."""

import argparse
from dataclasses import asdict, fields


def parse(cls, argv=None):
    p = argparse.ArgumentParser(description=cls.__doc__)
    for f in fields(cls):
        flag = "--" + f.name.replace("_", "-")
        if f.type in (bool, "bool"):
            p.add_argument(flag, action="store_true", default=f.default)
        else:
            kind = {"int": int, "float": float, "str": str}.get(f.type, f.type)
            p.add_argument(flag, type=kind, default=f.default)
    return cls(**vars(p.parse_args(argv)))


def show(cfg):
    return " ".join(f"{k}={v}" for k, v in asdict(cfg).items())
