"""Argument parsing helpers shared by the report commands."""
import argparse
import json

from rest_framework import serializers

from weights.builders import direct_sum, spin_model, su3_fundamental
from weights.serializers import WeightModelSerializer

from .models import UNITS


def parse_weight(text):
    """'2' -> (2,), '1,-1' -> (1, -1)."""
    try:
        return tuple(int(part) for part in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError('%r is not a comma-separated list of integers' % text)


def parse_positions(text):
    """1-based comma-separated positions -> 0-based tuple."""
    values = parse_weight(text)
    if any(v < 1 for v in values):
        raise argparse.ArgumentTypeError('positions are 1-based, got %r' % text)
    return tuple(v - 1 for v in values)


def add_model_arguments(parser, required=True):
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument(
        '--spin', type=int, action='append', metavar='TWO_J',
        help='SU(2) irreducible of spin TWO_J/2; repeat for a direct sum',
    )
    group.add_argument('--su3', action='store_true', help='SU(3) defining representation')
    group.add_argument('--model', metavar='FILE', help='weight model JSON file')


def add_units_argument(parser):
    parser.add_argument('--units', choices=UNITS, default='doubled', help='display units for weights and b')


def read_json(path):
    with open(path) as handle:
        return json.load(handle)


def load(path, serializer_class):
    serializer = serializer_class(data=read_json(path))
    serializer.is_valid(raise_exception=True)
    return serializer.save()


def model_from_options(options):
    if options.get('spin'):
        return direct_sum([spin_model(two_j) for two_j in options['spin']])
    if options.get('su3'):
        return su3_fundamental()
    if options.get('model'):
        return load(options['model'], WeightModelSerializer)
    return None


def describe_errors(exc):
    """Flatten DRF error details into one line."""
    if isinstance(exc, serializers.ValidationError):
        return json.dumps(exc.detail, default=str)
    return '; '.join(getattr(exc, 'messages', [str(exc)]))
