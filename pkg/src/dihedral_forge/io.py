"""Solution files (key=value text) and mesh export (OBJ, binary PLY)."""
from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np

from . import __version__
from .periods import DCCWParams, DEParams, DKSParams, SolutionRecord

PARAM_KEYS = {"de": ("a", "b", "alpha", "rho"), "dccw": ("a", "b", "c", "alpha"),
              "dks": ("a", "c", "tau", "alpha")}


def atomic_write(path, data) -> None:
    """Write to a temporary file in the target directory, then rename over the target."""
    path = Path(path)
    mode = "wb" if isinstance(data, (bytes, bytearray)) else "w"
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, mode, **({} if mode == "wb" else {"encoding": "utf-8"})) as fh:
            fh.write(data)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, complex):
        return f"{v.imag!r}j" if v.real == 0 else repr(v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _parse(v: str):
    v = v.strip()
    if v in ("true", "false"):
        return v == "true"
    try:
        return int(v)
    except ValueError:
        pass
    try:
        return float(v)
    except ValueError:
        pass
    try:
        return complex(v)
    except ValueError:
        return v


def record_to_dict(rec: SolutionRecord) -> dict:
    p = rec.params
    d = {"family": rec.family}
    for k in PARAM_KEYS[rec.family]:
        val = getattr(p, k)
        d[k] = complex(val) if k == "tau" else float(val)
    for k, v in sorted(rec.derived.items()):
        d[f"derived.{k}"] = v
    d["residual_norm"] = float(rec.residual_norm)
    d["iterations"] = int(rec.iterations)
    d["solved"] = bool(rec.solved)
    for k, v in sorted(rec.step.items()):
        d[f"step.{k}"] = v
    d["version"] = __version__
    return d


def dict_to_record(d: dict) -> SolutionRecord:
    fam = d["family"]
    if fam == "de":
        p = DEParams(d["a"], d["b"], d["alpha"], d["rho"])
    elif fam == "dccw":
        p = DCCWParams(d["a"], d["b"], d["c"], d["alpha"])
    elif fam == "dks":
        p = DKSParams(d["a"], d["c"], complex(d["tau"]), d["alpha"])
    else:
        raise ValueError(f"unknown family {fam!r}")
    derived = {k[8:]: v for k, v in d.items() if k.startswith("derived.")}
    step = {k[5:]: v for k, v in d.items() if k.startswith("step.")}
    return SolutionRecord(fam, p, float(d["residual_norm"]), int(d["iterations"]),
                          bool(d["solved"]), step, derived)


def serialize_records(records, header: str = "") -> str:
    """Records as key=value blocks separated by '[record]' lines."""
    lines = ["# dihedral-forge solution file", f"# format=1 version={__version__}"]
    if header:
        lines += [f"# {h}" for h in header.splitlines()]
    for rec in records:
        lines.append("[record]")
        lines += [f"{k}={_fmt(v)}" for k, v in record_to_dict(rec).items()]
    return "\n".join(lines) + "\n"


def parse_records(text: str) -> list:
    blocks, cur = [], None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "[record]":
            cur = {}
            blocks.append(cur)
            continue
        if "=" not in line:
            raise ValueError(f"malformed line: {raw!r}")
        if cur is None:
            cur = {}
            blocks.append(cur)
        k, v = line.split("=", 1)
        cur[k.strip()] = v.strip() if k.strip() in ("family", "version") else _parse(v)
    return [dict_to_record(b) for b in blocks]


def write_solutions(path, records, header: str = "") -> None:
    atomic_write(path, serialize_records(records, header))


def read_solutions(path) -> list:
    return parse_records(Path(path).read_text(encoding="utf-8"))


# --- meshes ---------------------------------------------------------------

def mesh_to_obj(mesh) -> str:
    out = [f"# dihedral-forge {__version__}", f"# vertices {len(mesh.vertices)}",
           f"# triangles {len(mesh.triangles)}"]
    out += [f"v {float(x)!r} {float(y)!r} {float(z)!r}" for x, y, z in mesh.vertices]
    out.append("g surface")
    out += [f"f {i + 1} {j + 1} {k + 1}" for i, j, k in mesh.triangles]
    for tag in sorted(mesh.boundary):
        out.append(f"g plane_{tag}")
        out += [f"l {i + 1} {j + 1}" for i, j in mesh.boundary[tag]]
    return "\n".join(out) + "\n"


def read_obj(text: str):
    v, f, groups, cur = [], [], {}, None
    for line in text.splitlines():
        s = line.split()
        if not s or s[0].startswith("#"):
            continue
        if s[0] == "v":
            v.append([float(x) for x in s[1:4]])
        elif s[0] == "f":
            f.append([int(x.split("/")[0]) - 1 for x in s[1:4]])
        elif s[0] == "g":
            cur = s[1]
        elif s[0] == "l":
            groups.setdefault(cur, []).append([int(x) - 1 for x in s[1:3]])
    return np.array(v), np.array(f, dtype=int), {k: np.array(e) for k, e in groups.items()}


def mesh_to_ply(mesh) -> bytes:
    head = ("ply\nformat binary_little_endian 1.0\n"
            f"comment dihedral-forge {__version__}\n"
            f"element vertex {len(mesh.vertices)}\n"
            "property double x\nproperty double y\nproperty double z\n"
            f"element face {len(mesh.triangles)}\n"
            "property list uchar int vertex_indices\nend_header\n").encode("ascii")
    verts = np.ascontiguousarray(mesh.vertices, dtype="<f8").tobytes()
    faces = np.zeros(len(mesh.triangles), dtype=[("n", "u1"), ("i", "<i4", (3,))])
    faces["n"] = 3
    faces["i"] = mesh.triangles
    return head + verts + faces.tobytes()


def read_ply(data: bytes):
    end = data.index(b"end_header\n") + len(b"end_header\n")
    header = data[:end].decode("ascii").splitlines()
    nv = int(next(h for h in header if h.startswith("element vertex")).split()[-1])
    nf = int(next(h for h in header if h.startswith("element face")).split()[-1])
    v = np.frombuffer(data, dtype="<f8", count=3 * nv, offset=end).reshape(nv, 3)
    rec = np.frombuffer(data, dtype=[("n", "u1"), ("i", "<i4", (3,))], count=nf,
                        offset=end + 24 * nv)
    if np.any(rec["n"] != 3):
        raise ValueError("only triangle faces are supported")
    return v.copy(), rec["i"].astype(int)


def write_mesh(path, mesh) -> None:
    path = Path(path)
    ext = path.suffix.lower()
    if ext == ".obj":
        atomic_write(path, mesh_to_obj(mesh))
    elif ext == ".ply":
        atomic_write(path, mesh_to_ply(mesh))
    else:
        raise ValueError(f"unsupported mesh format {ext!r}; use .obj or .ply")


