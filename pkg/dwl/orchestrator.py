"""
This class orchestrates one dwl run: arguments, settings, the selected command and its output.
"""
import argparse
import logging

from entities.grid import default_grid
from entities.landau import LandauState
from features.phase_space_field import PhaseSpaceField
from features.sweep import Sweep
from features.verify import Verify
from features.wigner_dump import WignerDump
from utils.config import QUANTITIES, read_config_file, resolve_settings, worker_count
from utils.errors import UsageError
from utils.files import write_csv, write_json, write_ppm


logger = logging.getLogger(__name__)

# Formats each command can write; the first one is the default.
COMMAND_FORMATS = {
    'sweep': ('csv', 'json'),
    'field': ('csv', 'json', 'ppm'),
    'verify': ('json',),
    'wigner-dump': ('json',),
}

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1


def _shared_flags() -> argparse.ArgumentParser:
    """
    Flags accepted by every command. Defaults stay None so that the config file and
    the built-in defaults can fill them in.
    """
    parser = argparse.ArgumentParser(add_help=False)
    state = parser.add_argument_group('state')
    state.add_argument('--n', help='Landau index n >= 1.')
    state.add_argument('--n-max', help='Largest Landau index of a sweep.')
    state.add_argument('--r', help='Parity branch, 1 or 2.')
    state.add_argument('--spin', help="Spin label, '+' or '-'.")

    physics = parser.add_argument_group('physics')
    physics.add_argument('--eps', help='Comma-separated values of eB/m^2.')
    physics.add_argument('--kappa', help='Comma-separated values of k_z^2/m^2.')
    physics.add_argument('--m', help='Mass (physical mode).')
    physics.add_argument('--eB', help='Magnetic coupling (physical mode).')
    physics.add_argument('--kz', help='Longitudinal momentum (physical mode).')
    physics.add_argument('--ky', help='Transverse momentum (physical mode).')

    numerics = parser.add_argument_group('numerics')
    numerics.add_argument('--grid-points', help='Nodes per phase-space axis.')
    numerics.add_argument('--grid-pad', help='Padding added to the classical turning point.')
    numerics.add_argument('--with-quadrature', action='store_const', const=True,
                          help='Also compute the sweep columns by quadrature (slower).')
    numerics.add_argument('--tolerance-scale', help='Multiplies every verification tolerance.')
    numerics.add_argument('--threads', help='Worker count, 0 for all cores (overrides DWL_THREADS).')

    output = parser.add_argument_group('output')
    output.add_argument('--quantity', help=f"Field to sample: {', '.join(QUANTITIES)}.")
    output.add_argument('--entry', help="Wigner matrix entry 'i,j' (1-based) for --quantity wigner.")
    output.add_argument('--probe', action='append', help="Probe point 's,k' for wigner-dump; repeatable.")
    output.add_argument('--format', help='Output format: csv, json or ppm.')
    output.add_argument('--out', help='Output file; stdout when omitted.')
    output.add_argument('--config', help='Flat key = value file with defaults for any flag.')
    output.add_argument('--verbose', '-v', action='store_const', const=True, help='Debug logging.')
    return parser


def build_parser() -> argparse.ArgumentParser:
    shared = _shared_flags()
    parser = argparse.ArgumentParser(prog='dwl', description='Phase-space information quantifiers of Dirac Landau states.')
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True
    commands.add_parser('sweep', parents=[shared], help='Mutual information and entropies over n and regimes.')
    commands.add_parser('field', parents=[shared], help='Sample a phase-space field on a grid.')
    commands.add_parser('verify', parents=[shared], help='Run the invariant suite and write a JSON report.')
    commands.add_parser('wigner-dump', parents=[shared], help='Analytic and numerical Wigner matrices at probe points.')
    return parser


class Orchestrator:
    def __init__(self):
        self.args = None
        self.settings = None
        self.output_format = None
        self.workers = 1
        self.exit_code = EXIT_OK

        # Features
        self.sweep_feat: Sweep = None
        self.field_feat: PhaseSpaceField = None
        self.verify_feat: Verify = None
        self.wigner_dump_feat: WignerDump = None

        # Results
        self.table = None
        self.payload = None

    def parse_arguments(self, argv=None):
        """
        Parse the arguments.
        """
        self.args = build_parser().parse_args(argv)

    def load_config(self):
        """
        Merge flags over the config file over the defaults.
        """
        flags = vars(self.args).copy()
        command = flags.pop('command')
        config_path = flags.pop('config', None)
        file_values = read_config_file(config_path) if config_path else {}

        self.settings = resolve_settings(command, flags, file_values)
        self.workers = worker_count(self.settings.threads)

        allowed = COMMAND_FORMATS[command]
        self.output_format = self.settings.format or allowed[0]
        if self.output_format not in allowed:
            raise UsageError(f"format: {command} writes {', '.join(allowed)}, got {self.output_format!r}")

    def configure_logging(self):
        """
        Raise the log level when --verbose is set.
        """
        if self.settings.verbose:
            logging.getLogger().setLevel(logging.DEBUG)
        logger.debug(f"Settings: {self.settings}")

    def _single_state(self) -> LandauState:
        param_sets = self.settings.param_sets()
        if len(param_sets) != 1:
            raise UsageError(f"eps, kappa: {self.settings.command} needs a single (eps, kappa) pair, "
                             f"got {len(param_sets)}")
        return LandauState(n=self.settings.n, r=self.settings.r, spin=self.settings.spin, params=param_sets[0])

    def run_sweep(self):
        """
        Tabulate the mutual information over n and the (eps, kappa) regimes.
        """
        if self.settings.command != 'sweep': return

        self.sweep_feat = Sweep(
            self.settings.param_sets(),
            n_max=self.settings.n_max,
            r=self.settings.r,
            spin=self.settings.spin,
            with_quadrature=self.settings.with_quadrature,
            grid_points=self.settings.grid_points,
            grid_pad=self.settings.grid_pad,
            tolerance=1e-8 * self.settings.tolerance_scale,
            workers=self.workers,
        )
        self.table = self.sweep_feat.run()

    def sample_field(self):
        """
        Sample the selected phase-space field.
        """
        if self.settings.command != 'field': return

        st = self._single_state()
        grid = default_grid(st.n, pad=self.settings.grid_pad, points=self.settings.grid_points)
        self.field_feat = PhaseSpaceField(st, self.settings.quantity, grid, entry=self.settings.entry)
        self.field_feat.sample()

    def run_verification(self):
        """
        Run the invariant suite.
        """
        if self.settings.command != 'verify': return

        self.verify_feat = Verify(
            tolerance_scale=self.settings.tolerance_scale,
            grid_points=self.settings.grid_points,
            grid_pad=self.settings.grid_pad,
            workers=self.workers,
        )
        self.payload = self.verify_feat.run()
        if not self.verify_feat.passed:
            self.exit_code = EXIT_VERIFICATION_FAILED

    def dump_wigner(self):
        """
        Dump analytic and oracle Wigner matrices at the probe points.
        """
        if self.settings.command != 'wigner-dump': return

        self.wigner_dump_feat = WignerDump(self._single_state(), probes=self.settings.probe, workers=self.workers)
        self.payload = self.wigner_dump_feat.run()

    def write_output(self):
        """
        Write the result to --out or stdout.
        """
        out = self.settings.out
        command = self.settings.command

        if command == 'sweep':
            if self.output_format == 'csv':
                write_csv(self.table, out)
            else:
                write_json({'rows': self.table.to_dict(orient='records')}, out)
        elif command == 'field':
            if self.output_format == 'csv':
                write_csv(self.field_feat.to_frame(), out)
            elif self.output_format == 'ppm':
                write_ppm(self.field_feat.values, out)
            else:
                write_json(self.field_feat.to_payload(), out)
        else:
            write_json(self.payload, out)

        if out is not None:
            logger.info(f"{self.output_format.upper()} file {out} created successfully.")
