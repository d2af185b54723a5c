"""Run manifests: enough provenance to re-run a pipeline step exactly."""

from __future__ import annotations

import hashlib
import json
import os
import time

from . import __version__


def _sha256(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def write_manifest(out_dir, command, config, inputs, seeds=None,
                   name="manifest.json"):
    """Write a JSON manifest: command, config snapshot, input checksums,
    seeds, package version, and a timestamp."""
    manifest = {
        "command": command,
        "config": config,
        "inputs": {str(p): _sha256(p) for p in inputs},
        "seeds": seeds or {},
        "version": __version__,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path
