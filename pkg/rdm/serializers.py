from math import isqrt

import numpy as np
from django.core.exceptions import ValidationError as DomainValidationError
from rest_framework import serializers

from weights.serializers import WeightModelSerializer

from .models import ReducedDensity


class ComplexMatrixField(serializers.Field):
    """Square complex matrix of [re, im] pairs.

    Accepts nested rows or one flat row-major list; always writes the flat list.
    """
    default_error_messages = {
        'pairs': 'matrix entries must be [re, im] pairs of numbers',
        'square': 'matrix must be square',
    }

    def to_internal_value(self, data):
        try:
            array = np.array(data, dtype=float)
        except (TypeError, ValueError):
            self.fail('pairs')
        if array.ndim == 2 and array.shape[1] == 2:
            size = isqrt(array.shape[0])
            if size * size != array.shape[0]:
                self.fail('square')
            array = array.reshape(size, size, 2)
        if array.ndim != 3 or array.shape[2] != 2:
            self.fail('pairs')
        if array.shape[0] != array.shape[1]:
            self.fail('square')
        return array[..., 0] + 1j * array[..., 1]

    def to_representation(self, value):
        return [[float(z.real), float(z.imag)] for z in np.asarray(value).ravel()]


class ReducedDensitySerializer(serializers.Serializer):
    """RDM JSON: the source model and N, 1-based kept positions and the matrix."""
    model = WeightModelSerializer()
    N = serializers.IntegerField(min_value=2)
    kept = serializers.ListField(child=serializers.IntegerField(min_value=1), allow_empty=False)
    matrix = ComplexMatrixField()
    trace = serializers.FloatField(read_only=True)
    asymmetry = serializers.FloatField(required=False, default=0.0)

    def validate(self, attrs):
        if max(attrs['kept']) > attrs['N'] or len(set(attrs['kept'])) != len(attrs['kept']):
            raise serializers.ValidationError({'kept': 'positions must be distinct and at most N'})
        return attrs

    def create(self, validated_data):
        model = WeightModelSerializer().create(validated_data['model'])
        try:
            return ReducedDensity(
                kept=tuple(sorted(p - 1 for p in validated_data['kept'])),
                local_dimension=model.dimension,
                matrix=validated_data['matrix'],
                asymmetry=validated_data['asymmetry'],
            )
        except DomainValidationError as exc:
            raise serializers.ValidationError(exc.messages)

    def to_representation(self, instance):
        shape = self.context['shape']
        return {
            'model': WeightModelSerializer(shape.model).data,
            'N': shape.n,
            'kept': [p + 1 for p in instance.kept],
            'matrix': ComplexMatrixField().to_representation(instance.matrix),
            'trace': instance.trace,
            'asymmetry': instance.asymmetry,
        }
