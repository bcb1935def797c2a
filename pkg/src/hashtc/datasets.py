"""Download helpers for the SNAP graphs used as ground truth."""

from __future__ import annotations

import gzip
import hashlib
import logging
import os
import shutil
import urllib.request
from dataclasses import dataclass
from pathlib import Path

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Dataset:
    name: str
    url: str
    vertices: int
    edges: int
    triangles: int


DATASETS = {
    "cit-patents": Dataset("cit-patents", "https://snap.stanford.edu/data/cit-Patents.txt.gz",
                           3_774_768, 16_518_947, 7_515_023),
    "orkut": Dataset("orkut", "https://snap.stanford.edu/data/bigdata/communities/com-orkut.ungraph.txt.gz",
                     3_072_441, 117_185_083, 627_584_181),
}


def data_dir() -> Path:
    return Path(os.environ.get("HASHTC_DATA_DIR", Path.home() / ".cache" / "hashtc"))


def local_path(name: str, directory=None) -> Path:
    return Path(directory or data_dir()) / f"{name}.txt"


def find_dataset(name: str, directory=None) -> Path | None:
    """Path of an already fetched dataset, or ``None``."""
    path = local_path(name, directory)
    return path if path.exists() else None


def sha256sum(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


class ChecksumMismatch(RuntimeError):
    pass


def fetch(name: str, directory=None, sha256: str | None = None, force: bool = False) -> Path:
    """Download and gunzip a dataset.

    The archive digest is checked against ``sha256`` when given, otherwise
    against the digest pinned on the first download (``<name>.txt.gz.sha256``).
    """
    ds = DATASETS[name]
    out_dir = Path(directory or data_dir())
    out_dir.mkdir(parents=True, exist_ok=True)
    target = local_path(name, out_dir)
    if target.exists() and not force:
        return target
    archive = out_dir / f"{name}.txt.gz"
    pin = archive.with_suffix(".gz.sha256")
    log.info("downloading %s", ds.url)
    with urllib.request.urlopen(ds.url) as resp, open(archive, "wb") as fh:
        shutil.copyfileobj(resp, fh)
    digest = sha256sum(archive)
    expected = sha256 or (pin.read_text().strip() if pin.exists() else None)
    if expected and digest != expected:
        archive.unlink()
        raise ChecksumMismatch(f"{name}: sha256 {digest} != expected {expected}")
    pin.write_text(digest + "\n")
    with gzip.open(archive, "rb") as src, open(target, "wb") as dst:
        shutil.copyfileobj(src, dst)
    return target
