"""
File emitters for matrices, measures, profiles, partition functions, sum-rule
constants, estimator records and trajectory logs. Output depends only on the inputs.
"""
import csv
import json
from contextlib import contextmanager

from generator.operators import FULL


@contextmanager
def open_output(path, fallback):
    """Write to ``path`` when given, otherwise to ``fallback`` (a command's stdout)."""
    if not path:
        yield fallback
        return
    with open(path, 'w', newline='') as stream:
        yield stream


def _or_dash(value):
    return '-' if value is None else value


def format_value(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_matrix(op, stream, params=None):
    """Header ``dim basis L N M r ell``, then one ``row col value`` line per nonzero (1-based)."""
    basis = op.basis
    header = [
        basis.dim,
        basis.kind,
        basis.L,
        _or_dash(basis.N),
        _or_dash(basis.M),
        _or_dash(params.r if params else None),
        _or_dash(params.ell if params else None),
    ]
    stream.write(' '.join(str(item) for item in header) + '\n')
    for row, col, value in op.entries():
        stream.write(f'{row + 1} {col + 1} {format_value(value)}\n')


def read_matrix_header(line):
    dim, kind, L, N, M, r, ell = line.split()
    sector = None if kind == FULL else (int(N), int(M))
    return int(dim), kind, int(L), sector, r, ell


def write_measure(measure, stream, q0=None):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(['config', 'weight'])
    for config, probability in measure.items(q0):
        writer.writerow([str(config), format_value(probability)])


def write_exact_measure(measure, stream):
    """Unnormalized weights as Laurent polynomials, followed by the partition function."""
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(['config', 'weight'])
    for config, weight in sorted(measure.weights.items(), key=lambda item: item[0].index):
        writer.writerow([str(config), str(weight)])
    writer.writerow(['Z', str(measure.partition)])


def write_profile(rows, stream):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(['site', 'density'])
    for site, density in rows:
        writer.writerow([site, format_value(density)])


def write_partitions(rows, stream):
    """``(N, M, Z)`` rows."""
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(['N', 'M', 'Z'])
    for N, M, Z in rows:
        writer.writerow([N, M, str(Z)])


def write_lambdas(results, stream):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(['N', 'M', 'Nprime', 'Mprime', 'lambda_poly'])
    for result in results:
        writer.writerow(result.csv_row())


def estimator_record(z, t, estimate, prediction=None):
    record = {
        'z': str(z),
        't': t,
        'mean': estimate.mean,
        'stderr': estimate.stderr,
        'n': estimate.n,
    }
    if prediction is not None:
        record['prediction'] = prediction
        record['z_score'] = estimate.z_score(prediction)
    return record


def write_json_lines(records, stream):
    for record in records:
        stream.write(json.dumps(record, sort_keys=True) + '\n')


def write_trajectory(log, stream):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(['time', 'config'])
    for time, config in log:
        writer.writerow([format_value(time), str(config)])
