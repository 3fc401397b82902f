"""Salt cavern hydrogen storage potential toolkit.

The heavy lifting lives in the compiled ``_halite`` extension; this package
re-exports its surface and resolves the bundled compressibility table.
"""

import os

from ._halite import (  # noqa: F401
    CompressibilityTable,
    RangeError,
    ThermoParams,
    ValidationError,
    __version__,
    cavern_capacity_gwh,
    classify_deposit,
    diff_scenarios,
    expansion_rate_twh_per_a,
    lithostatic_pressure_pa,
    operating_pressures_pa,
    pack_cavern_count,
    run_scenario,
    storage_need_twh,
    sufficiency_pct,
    transport_increment_pct,
)


def default_z_table_path() -> str:
    """Path of the hydrogen compressibility table shipped with the package.

    Honors HALITE_DATA_DIR when set, mirroring the CLI.
    """
    env_dir = os.environ.get("HALITE_DATA_DIR")
    if env_dir:
        candidate = os.path.join(env_dir, "h2_compressibility_z.csv")
        if os.path.exists(candidate):
            return candidate
    return os.path.join(os.path.dirname(__file__), "data", "h2_compressibility_z.csv")


def load_default_z_table() -> CompressibilityTable:
    return CompressibilityTable.load_csv(default_z_table_path())
