"""Run the reference configuration and a small detector-efficiency sweep."""

from __future__ import annotations

import asyncio


async def main() -> None:
    """Run the demo."""
    from qteleport import ProtocolConfig, run_teleportation
    from qteleport.harness.sweep import SweepSpec, arun_sweep
    from qteleport.ui import print_report

    config = ProtocolConfig(diagnostics=True)
    print("Reference run (T = 40/kappa, g0 = 5 kappa)")
    print("=" * 50)
    print_report(run_teleportation(config))

    spec = SweepSpec(param="detection.efficiency", values=[0.25, 0.5, 0.75, 1.0])
    print("\nDetector efficiency sweep")
    print("=" * 50)
    for row in await arun_sweep(config, spec, jobs=2):
        fidelity = row.fidelity or 0.0
        print(f"eta = {row.value:<5} fidelity = {fidelity:.6f}  P = {row.p_success:.4f}")


if __name__ == "__main__":
    asyncio.run(main())
