"""Content-addressed run manifest: every stage records input and output digests.

The manifest file itself is deterministic for deterministic stage outputs;
wall-clock timings go to a separate sidecar so reruns stay byte-identical.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Mapping

MANIFEST_NAME = "manifest.json"
TIMINGS_NAME = "timings.json"
MANIFEST_VERSION = 1


class ManifestError(RuntimeError):
    pass


class DependencyError(ManifestError):
    """A required upstream stage has not been recorded."""


class StaleInputError(ManifestError):
    """An input file no longer matches the digest its producing stage recorded."""


class StageConflictError(ManifestError):
    """A stage was already recorded with different outputs."""


def file_digest(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


class Manifest:
    def __init__(self, out_dir: str | Path, config_digest: str):
        self.out_dir = Path(out_dir)
        self.path = self.out_dir / MANIFEST_NAME
        if self.path.exists():
            self.data = json.loads(self.path.read_text("utf-8"))
            if self.data.get("config_digest") != config_digest:
                raise ManifestError(
                    f"{self.path} was produced with a different configuration; "
                    f"use a fresh output directory or the same config"
                )
        else:
            self.data = {
                "version": MANIFEST_VERSION,
                "config_digest": config_digest,
                "stages": {},
            }

    # -- recording ---------------------------------------------------------

    def record_stage(
        self,
        stage: str,
        inputs: Mapping[str, str | Path],
        outputs: Mapping[str, str | Path],
        counts: Mapping[str, object] | None = None,
        extra: Mapping[str, object] | None = None,
        force: bool = False,
    ) -> None:
        entry = {
            "inputs": {name: file_digest(path) for name, path in sorted(inputs.items())},
            "outputs": {
                name: {
                    "file": self._relative(path),
                    "sha256": file_digest(path),
                }
                for name, path in sorted(outputs.items())
            },
            "counts": dict(counts or {}),
            "extra": dict(extra or {}),
        }
        existing = self.data["stages"].get(stage)
        if existing is not None and not force:
            if existing == entry:
                return  # idempotent rerun
            raise StageConflictError(
                f"stage {stage!r} already recorded with different content; "
                f"rerun with --force to replace it"
            )
        self.data["stages"][stage] = entry
        self.save()

    def _relative(self, path: str | Path) -> str:
        path = Path(path)
        try:
            return path.resolve().relative_to(self.out_dir.resolve()).as_posix()
        except ValueError:
            return path.name

    # -- verification -------------------------------------------------------

    def stage(self, stage: str) -> dict:
        try:
            return self.data["stages"][stage]
        except KeyError:
            raise DependencyError(
                f"stage {stage!r} has not been run in {self.out_dir}"
            ) from None

    def verify_if_recorded(self, stage: str, output: str, path: str | Path) -> None:
        """Verify `path` when it is the file the stage recorded; a different
        path is an external input and is only digested, not cross-checked."""
        entry = self.data["stages"].get(stage)
        if not entry or output not in entry.get("outputs", {}):
            return
        recorded = self.out_dir / entry["outputs"][output]["file"]
        if Path(path).resolve() == recorded.resolve():
            self.verify_upstream(stage, output, path)

    def verify_upstream(self, stage: str, output: str, path: str | Path) -> Path:
        """Check that `path` is byte-identical to what `stage` recorded for `output`."""
        entry = self.stage(stage)
        try:
            recorded = entry["outputs"][output]
        except KeyError:
            raise DependencyError(f"stage {stage!r} has no output {output!r}") from None
        path = Path(path)
        if not path.exists():
            raise StaleInputError(f"{path} is missing but recorded by stage {stage!r}")
        actual = file_digest(path)
        if actual != recorded["sha256"]:
            raise StaleInputError(
                f"{path} does not match the digest recorded by stage {stage!r} "
                f"({actual[:12]} != {recorded['sha256'][:12]})"
            )
        return path

    def save(self) -> None:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        payload = json.dumps(self.data, sort_keys=True, indent=2) + "\n"
        self.path.write_text(payload, encoding="utf-8")

    # -- timings sidecar -----------------------------------------------------

    def record_timing(self, stage: str, seconds: float) -> None:
        timings_path = self.out_dir / TIMINGS_NAME
        timings = {}
        if timings_path.exists():
            timings = json.loads(timings_path.read_text("utf-8"))
        timings[stage] = round(seconds, 6)
        timings_path.write_text(
            json.dumps(timings, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
