"""
Synchronous entry points for scripts and notebooks that do not run an event loop.
"""

import asyncio
from typing import Optional

from .config import ConfigLoader
from .verification import BooleanArtifact, VerificationRunner, VerifyReport, load_artifact


def run_verify_sync(
    left: str,
    right: str,
    mode: str = "exhaustive",
    samples: int = 256,
    seed: int = 0,
    config: Optional[ConfigLoader] = None,
    **qnn_options,
) -> VerifyReport:
    """
    Synchronous helper to check two circuit or QNN files for equivalence.

    ``left`` and ``right`` are file paths or already loaded artifacts;
    ``qnn_options`` (d_mode, precision, dynamics, ...) apply to QNN programs.
    For scripts and notebooks that don't want to manage asyncio directly.
    """
    left_artifact: BooleanArtifact = load_artifact(left, **qnn_options) if isinstance(left, str) else left
    right_artifact: BooleanArtifact = load_artifact(right, **qnn_options) if isinstance(right, str) else right

    async def _run():
        async with VerificationRunner(config=config) as runner:
            return await runner.verify(left_artifact, right_artifact, mode, samples, seed)

    return asyncio.run(_run())
