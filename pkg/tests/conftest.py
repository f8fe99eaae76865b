"""Session-scoped acceptance runs, shared across the acceptance criteria.

These are the heavyweight fixtures (minutes each at desk scale); pytest
builds them lazily, so unit-test-only invocations never pay for them.
"""

import time

import pytest

from boxtomo import (
    BeamSplitterModel,
    FockSpaceConfig,
    ReconstructionOptions,
    SimulationRun,
    bin_dataset,
    bootstrap,
    build_bs_tensor,
    default_probe_schedule,
    generate_dataset,
    reconstruct,
    truncate_tensor,
)

BS_SEED = 7
ID_SEED = 11
BOOT_SEED = 404
X_BIN_WIDTH = 0.05
BOOT_BIN_WIDTH = 0.07
BS_ITERS = 350
ID_ITERS = 400
BOOT_ITERS = 200
BOOT_SAMPLES = 10000


def _acceptance_run(model: BeamSplitterModel, seed: int, max_iterations: int) -> dict:
    schedule = default_probe_schedule()
    t0 = time.perf_counter()
    data = generate_dataset(SimulationRun(model=model, schedule=schedule, seed=seed))
    data = bin_dataset(data, x_bin_width=X_BIN_WIDTH)
    options = ReconstructionOptions(
        max_iterations=max_iterations, loglik_rel_tol=1e-14
    )
    result = reconstruct(data, options)
    elapsed = time.perf_counter() - t0
    ideal4 = build_bs_tensor(model, FockSpaceConfig(2, 4))
    return {
        "model": model,
        "result": result,
        "elapsed": elapsed,
        "ideal4": ideal4,
        "ideal2": truncate_tensor(ideal4, 2),
        "n_raw_records": schedule.n_settings * schedule.samples_per_setting,
    }


@pytest.fixture(scope="session")
def bs_run():
    """Default-schedule symmetric-coupler pipeline: 17 probes x 3 LO sets x 3e4."""
    return _acceptance_run(BeamSplitterModel.symmetric(), BS_SEED, BS_ITERS)


@pytest.fixture(scope="session")
def id_run():
    """Identity-model control pipeline at the same schedule."""
    return _acceptance_run(BeamSplitterModel.identity(), ID_SEED, ID_ITERS)


@pytest.fixture(scope="session")
def boot_run():
    """Five simulate-and-reconstruct replicas at reduced desk scale."""
    schedule = default_probe_schedule(samples_per_setting=BOOT_SAMPLES)
    options = ReconstructionOptions(max_iterations=BOOT_ITERS, loglik_rel_tol=1e-14)
    return bootstrap(
        BeamSplitterModel.symmetric(),
        schedule,
        options,
        n_replicas=5,
        seed=BOOT_SEED,
        x_bin_width=BOOT_BIN_WIDTH,
        keep_diagnostics=True,
    )
