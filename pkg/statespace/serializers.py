import numpy as np
from django.core.exceptions import ValidationError as DomainValidationError
from rest_framework import serializers

from weights.serializers import WeightModelSerializer

from .models import StateVector, SystemShape


class AmplitudeSerializer(serializers.Serializer):
    index = serializers.ListField(child=serializers.IntegerField(min_value=1), allow_empty=False)
    re = serializers.FloatField()
    im = serializers.FloatField(required=False, default=0.0)


class StateSerializer(serializers.Serializer):
    """JSON state format with 1-based multi-indices; only listed amplitudes are nonzero."""
    model = WeightModelSerializer()
    N = serializers.IntegerField(min_value=2)
    support_weight = serializers.ListField(child=serializers.IntegerField(), allow_null=True, required=False, default=None)
    amplitudes = AmplitudeSerializer(many=True)

    def validate(self, attrs):
        d = len(attrs['model']['weights'])
        seen = set()
        for entry in attrs['amplitudes']:
            index = tuple(entry['index'])
            if len(index) != attrs['N'] or max(index) > d:
                raise serializers.ValidationError(
                    {'amplitudes': 'index %s is not a valid %d-particle index over %d basis vectors' % (list(index), attrs['N'], d)}
                )
            if index in seen:
                raise serializers.ValidationError({'amplitudes': 'index %s listed twice' % list(index)})
            seen.add(index)
        return attrs

    def create(self, validated_data):
        model = WeightModelSerializer().create(validated_data['model'])
        try:
            shape = SystemShape(model=model, n=validated_data['N'])
            indices = [tuple(i - 1 for i in entry['index']) for entry in validated_data['amplitudes']]
            values = [complex(entry['re'], entry['im']) for entry in validated_data['amplitudes']]
            support = validated_data.get('support_weight')
            if support is not None:
                order = sorted(range(len(indices)), key=indices.__getitem__)
                return StateVector(
                    shape=shape,
                    amplitudes=[values[k] for k in order],
                    basis=tuple(indices[k] for k in order),
                    support_weight=tuple(support),
                )
            dense = np.zeros(shape.tensor_shape, dtype=np.complex128)
            for index, value in zip(indices, values):
                dense[index] = value
            return StateVector(shape=shape, amplitudes=dense)
        except DomainValidationError as exc:
            raise serializers.ValidationError(exc.messages)

    def to_representation(self, instance):
        amplitudes = [
            {'index': [i + 1 for i in index], 're': value.real, 'im': value.imag}
            for index, value in instance.items()
        ]
        return {
            'model': WeightModelSerializer(instance.shape.model).data,
            'N': instance.shape.n,
            'support_weight': list(instance.support_weight) if instance.support_weight is not None else None,
            'amplitudes': amplitudes,
        }
