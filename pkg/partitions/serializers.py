"""CSV export of frequency matrices."""
import csv


def format_target(target):
    return ';'.join(str(t) for t in target)


def write_frequency_matrix(matrix, stream):
    """Write a comment line with (D, slots, target), the n_1..n_D header, then one row per partition."""
    d = matrix.model.dimension
    stream.write('# D=%d slots=%d target=%s kind=%s\n' % (d, matrix.slots, format_target(matrix.target), matrix.kind))
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(['n_%d' % (r + 1) for r in range(d)])
    writer.writerows(matrix.rows)
