from dataclasses import dataclass

from django.core.exceptions import ValidationError

import cwrdm

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_VACUOUS = 2
EXIT_USAGE = 3
EXIT_IO = 4

DOUBLED = 'doubled'
SPIN = 'spin'
UNITS = (DOUBLED, SPIN)


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines a report, rendered as its provenance header."""
    command: str
    model: object = None
    parameters: tuple = ()
    seed: int | None = None
    tolerance: float | None = None
    units: str = DOUBLED

    def __post_init__(self):
        if self.tolerance is not None and not self.tolerance > 0:
            raise ValidationError('Tolerances must be positive', code='bad_tolerance')
        if self.units not in UNITS:
            raise ValidationError('Unknown units %(units)s', code='bad_units', params={'units': self.units})

    def header_lines(self):
        lines = ['# cwrdm %s command=%s' % (cwrdm.__version__, self.command)]
        if self.model is not None:
            weights = ' '.join(';'.join(str(c) for c in w) for w in self.model.weights)
            lines.append('# model=%s cartan_dim=%d weights=%s' % (self.model, self.model.cartan_dim, weights))
        settings = ['%s=%s' % (key, value) for key, value in self.parameters]
        if self.seed is not None:
            settings.append('seed=%d' % self.seed)
        if self.tolerance is not None:
            settings.append('tolerance=%g' % self.tolerance)
        settings.append('units=%s' % self.units)
        lines.append('# ' + ' '.join(settings))
        return lines

    def as_dict(self):
        return {
            'version': cwrdm.__version__,
            'command': self.command,
            'model': str(self.model) if self.model is not None else None,
            'parameters': dict(self.parameters),
            'seed': self.seed,
            'tolerance': self.tolerance,
            'units': self.units,
        }
