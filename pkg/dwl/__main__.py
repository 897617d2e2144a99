"""
This script runs one dwl command: sweep, field, verify or wigner-dump.
"""
import logging
import sys

from orchestrator import Orchestrator
from utils.errors import ArgumentError, NumericalAccuracyError, OutputError, UsageError


EXIT_USAGE = 2
EXIT_OUTPUT = 3
EXIT_COMPUTATION = 4


def main(argv=None) -> int:
    logging.basicConfig(format="[%(module)-12s] %(message)s", level=logging.INFO, stream=sys.stderr)
    logger = logging.getLogger('dwl')

    # Create the Orchestrator object
    orchestrator = Orchestrator()

    try:
        # Parse the arguments and resolve the settings
        orchestrator.parse_arguments(argv)
        orchestrator.load_config()
        orchestrator.configure_logging()
    except UsageError as error:
        logger.error(f"Usage error: {error}")
        return EXIT_USAGE

    try:
        # Run the selected command
        orchestrator.run_sweep()
        orchestrator.sample_field()
        orchestrator.run_verification()
        orchestrator.dump_wigner()

        # Write the result
        orchestrator.write_output()
    except UsageError as error:
        logger.error(f"Usage error: {error}")
        return EXIT_USAGE
    except NumericalAccuracyError as error:
        logger.error(f"Numerical accuracy error: {error}")
        if error.residual is not None:
            logger.error(f"Residual {error.residual:.3e}; try more --grid-points or a larger --tolerance-scale")
        return EXIT_COMPUTATION
    except ArgumentError as error:
        logger.error(f"Computation error: {error}")
        return EXIT_COMPUTATION
    except (OutputError, OSError) as error:
        logger.error(f"Output error: {error}")
        return EXIT_OUTPUT

    return orchestrator.exit_code


if __name__ == "__main__":
    sys.exit(main())
