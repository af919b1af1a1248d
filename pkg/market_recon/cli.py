"""Command-line surface for market reconstruction."""
import argparse
import sys

from market_recon.config import (COMMANDS, PRICE_BASES, RunConfig, attach_log_file,
                                 detach_log_file, get_custom_logger, set_log_level)
from market_recon.exceptions import ConfigException, MarketReconException
from market_recon.market_reconstruction import MarketReconstruction

logger = get_custom_logger("market_recon.cli")

COMMAND_HELP = {
    "stats": "trend, returns and stylized facts of a price series",
    "encode": "coded symbols and the transition model of the training half",
    "reconstruct": "actual, Markov and random price paths for a few seeded runs",
    "montecarlo": "Markov against random forecast errors over many seeded runs",
    "ksweep": "mean forecast errors for each chain order in --k-range",
    "randomwalk": "unit-step random walk paths and ensemble statistics",
}


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", dest="input_path", help="price CSV with Date and Adj Close")
    common.add_argument("--symbols", dest="n_symbols", type=int, help="alphabet size N (odd)")
    common.add_argument("--order", dest="order_k", type=int, help="chain order K")
    common.add_argument("--sims", type=int, help="simulations per chain order")
    common.add_argument("--seed", type=int, help="master seed for every random draw")
    common.add_argument("--degree", type=int, help="degree of the polynomial trend")
    common.add_argument("--window", type=int, help="sliding volatility window")
    common.add_argument("--k-range", dest="k_range", help="chain orders as a..b")
    common.add_argument("--fit-range", dest="fit_range", help="horizons for the scaling fit as a..b")
    common.add_argument("--output-dir", dest="output_dir", help="directory for output files")
    common.add_argument("--n-max", dest="n_max", type=int, help="longest return horizon")
    common.add_argument("--q-max", dest="q_max", type=int, help="highest moment order")
    common.add_argument("--t-max", dest="t_max", type=int, help="longest correlation lag")
    common.add_argument("--basis", choices=PRICE_BASES, help="prices the return statistics use")
    common.add_argument("--reverse", action="store_true", default=None,
                        help="train on the second half and forecast the first")
    common.add_argument("--runs", type=int, help="runs written by reconstruct")
    common.add_argument("--workers", type=int, help="worker processes for simulations")
    common.add_argument("--start-price", dest="start_price", type=float,
                        help="random walk starting price")
    common.add_argument("--paths", type=int, help="random walk ensemble size")
    common.add_argument("--steps", type=int, help="random walk ensemble length")
    common.add_argument("--log-level", dest="log_level", default="INFO",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    common.add_argument("--log-file", dest="log_file",
                        help="also write the run log to this file")
    return common


def build_parser():
    parser = argparse.ArgumentParser(
        prog="market_recon",
        description="Reconstruct the process behind a price series with a Markov chain.")
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()
    for command in COMMANDS:
        subparsers.add_parser(command, parents=[common], help=COMMAND_HELP[command])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    flags = vars(args)
    command = flags.pop("command")
    set_log_level(flags.pop("log_level"))
    log_file = flags.pop("log_file")

    try:
        config = RunConfig.from_sources(command, flags)
    except ConfigException as e:
        parser.error(str(e))

    try:
        if log_file:
            attach_log_file(log_file)
        written = MarketReconstruction(config).run()
    except (MarketReconException, OSError) as e:
        logger.error("%s failed: %s", command, e)
        return 1
    finally:
        detach_log_file()

    if log_file:
        written.append(log_file)
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
