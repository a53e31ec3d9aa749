"""Display formatting and CSV layouts of the command reports."""
import csv
from fractions import Fraction

from .models import SPIN


def display_value(value, units):
    value = Fraction(value)
    return str(value / 2 if units == SPIN else value)


def display_weight(weight, units):
    return ';'.join(display_value(c, units) for c in weight)


def display_float(value, units):
    return '%.12g' % (value / 2 if units == SPIN else value)


def display_index(index):
    return ' '.join(str(i + 1) for i in index)


def writer(stream):
    return csv.writer(stream, lineterminator='\n')


def write_partition_block(stream, target, partitions, bs, report, units):
    """One target of the partition table: rows, b per Cartan component and the ranks."""
    if not partitions:
        stream.write('# target=%s vacuous: no partitions\n' % display_weight(target, units))
        return
    d = partitions[0].model.dimension
    ranks = '' if report is None else ' rank_A=%d rank_A_tilde=%d witness=%s' % (
        report.rank_a, report.rank_a_tilde, 'yes' if report.has_witness else 'no')
    stream.write('# target=%s partitions=%d%s\n' % (display_weight(target, units), len(partitions), ranks))
    out = writer(stream)
    out.writerow(['partition'] + ['n_%d' % (r + 1) for r in range(d)])
    for partition in partitions:
        out.writerow([' '.join(display_weight(w, units) for w in partition.weights)] + list(partition.frequencies))
    for b in bs:
        label = 'b' if len(bs) == 1 else 'b[%d]' % (b.component + 1)
        out.writerow([label] + [display_value(v, units) for v in b.values])


def write_trial_table(stream, rows):
    out = writer(stream)
    out.writerow(['trial', 'seed', 'contexts', 'vacuous', 'max_residual', 'max_relative'])
    for row in rows:
        out.writerow([row['trial'], row['seed'], row['contexts'], row['vacuous'],
                      '%.3e' % row['max_residual'], '%.3e' % row['max_relative']])


def write_context_table(stream, results, label, units):
    out = writer(stream)
    out.writerow(['N', 'model', 'w', 'M', 'I0', 'S', 'b', 'residual', 'vacuous'])
    for result in results:
        context = result.context
        out.writerow([
            context.shape.n, label, display_weight(context.w, units), context.m,
            display_index(context.i0), display_weight(context.s, units),
            ' | '.join(' '.join(display_value(v, units) for v in b.values) for b in result.b),
            '%.3e' % result.max_residual, 'yes' if result.vacuous else 'no',
        ])


def write_certificate_table(stream, verdict, units):
    out = writer(stream)
    out.writerow(['pivot', 'I0', 'mass', 'candidate', 'residual'])
    for row in verdict.rows:
        candidate = '' if row.candidate is None else ';'.join(display_float(c, units) for c in row.candidate)
        residual = '' if row.residual is None else ';'.join('%.3e' % r for r in row.residual)
        out.writerow([row.pivot + 1, row.i0 + 1, '%.12g' % row.mass, candidate, residual])


def write_deviation_table(stream, deviation):
    out = writer(stream)
    out.writerow(['traced', 'deviation'])
    for traced, value in deviation.table.items():
        out.writerow([display_index(traced), '%.6e' % value])
