"""Shipped scenes in the text scene format."""

from __future__ import annotations

from pathlib import Path

HERE = Path(__file__).resolve().parent
NAMES = ("poly_fig1", "poly_fig2", "poly_fig2_mirror", "poly_star8", "comb16", "holes1", "seg_layers", "convex32")


def path(name: str) -> Path:
    return HERE / f"{name}.scene"


def load(name: str, validate: bool = True):
    from ..io import load_scene

    return load_scene(path(name), validate)
