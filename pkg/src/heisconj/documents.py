"""JSON group specifications and element documents.

A group spec is either ``{"model": "integer"}`` or an object::

    {
      "N": {"moduli": [...]}, "P": {"moduli": [...]}, "C": {"moduli": [...]},
      "pairing": [[<C-vector>, ...], ...],          # rank N x rank P
      "K": {"moduli": [...],
            "generators": [{"k_p": <rank P x rank N matrix>,
                            "x": [<C-vector or null>, ...],   # optional
                            "hom": <rank C x rank N matrix>}]}  # optional
    }

Modulus 0 stands for a factor Z.  Matrix column j is the image of the
j-th source generator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .abelian import AbHom, CyclicProduct
from .heis import ExtElement, ExtGroup, HeisenbergData, KGroup, build_graded_aut
from .integer import ZExtElement


class SpecError(ValueError):
    """The document is malformed or fails validation."""


@dataclass
class Model:
    name: str
    group: ExtGroup
    integer: bool = False

    @property
    def is_finite(self) -> bool:
        return self.group.is_finite


def catalog_dir() -> Path:
    return Path(str(resources.files("heisconj") / "catalog"))


def catalog_paths() -> list[Path]:
    return sorted(catalog_dir().glob("*.json"))


def _group(doc, key) -> CyclicProduct:
    try:
        return CyclicProduct(tuple(doc[key]["moduli"]))
    except (KeyError, TypeError) as exc:
        raise SpecError(f"missing or malformed '{key}'") from exc


def build_model(doc: dict, name: str = "") -> Model:
    if not isinstance(doc, dict):
        raise SpecError("group spec must be a JSON object")
    name = doc.get("name", name)
    if doc.get("model") == "integer":
        return Model(name or "integer", ExtGroup.integer(), integer=True)
    if "model" in doc:
        raise SpecError(f"unknown model {doc['model']!r}")
    try:
        N, P, C = _group(doc, "N"), _group(doc, "P"), _group(doc, "C")
        H = HeisenbergData(N, P, C, doc["pairing"])
        kdoc = doc["K"]
        K = CyclicProduct(tuple(kdoc["moduli"]))
        gens = []
        for g in kdoc["generators"]:
            k_p = AbHom(N, P, g["k_p"])
            hom = AbHom(N, C, g["hom"]) if g.get("hom") is not None else None
            gens.append(build_graded_aut(H, k_p, g.get("x"), hom))
        return Model(name, ExtGroup(H, KGroup(H, K, tuple(gens))))
    except SpecError:
        raise
    except (KeyError, TypeError, IndexError) as exc:
        raise SpecError(f"malformed group spec: {exc!r}") from exc
    except ValueError as exc:
        raise SpecError(str(exc)) from exc


def parse_group_spec(source) -> Model:
    """Load a spec from a path, ``"-"`` for stdin, a JSON string or a dict."""
    if isinstance(source, dict):
        return build_model(source)
    if hasattr(source, "read"):
        text, name = source.read(), ""
    else:
        path = Path(source)
        text, name = path.read_text(encoding="utf-8"), path.stem
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"malformed JSON: {exc}") from exc
    return build_model(doc, name)


def parse_element(model: Model, doc) -> ExtElement | ZExtElement:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SpecError(f"malformed element JSON: {exc}") from exc
    try:
        p, c, n, k = doc["p"], doc["c"], doc["n"], doc["k"]
    except (KeyError, TypeError) as exc:
        raise SpecError("element needs keys p, c, n, k") from exc
    try:
        if model.integer:
            vals = [v[0] if isinstance(v, list) and len(v) == 1 else v for v in (p, c, n, k)]
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in vals):
                raise SpecError("integer-model elements are integer quadruples")
            return ZExtElement(*vals)
        wrap = [v if isinstance(v, list) else [v] for v in (p, c, n, k)]
        return model.group.element(*wrap)
    except SpecError:
        raise
    except (ValueError, TypeError) as exc:
        raise SpecError(f"invalid element: {exc}") from exc


def element_to_json(x) -> dict:
    if isinstance(x, ZExtElement):
        return {"p": x.p, "c": x.c, "n": x.n, "k": x.k}
    return {"p": list(x.p.coords), "c": list(x.c.coords),
            "n": list(x.n.coords), "k": list(x.k.coords)}


def to_z(x: ExtElement) -> ZExtElement:
    return ZExtElement(x.p.coords[0], x.c.coords[0], x.n.coords[0], x.k.coords[0])


def from_z(G: ExtGroup, x: ZExtElement) -> ExtElement:
    return G.element([x.p], [x.c], [x.n], [x.k])
