from django.core.exceptions import ValidationError as DomainValidationError
from rest_framework import serializers

from .models import WeightModel


class WeightModelSerializer(serializers.Serializer):
    cartan_dim = serializers.IntegerField(min_value=1, required=False)
    weights = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(), allow_empty=False),
        allow_empty=False,
    )
    label = serializers.CharField(allow_blank=True, required=False, default='')

    def validate(self, attrs):
        cartan_dim = attrs.get('cartan_dim') or len(attrs['weights'][0])
        lengths = {len(w) for w in attrs['weights']}
        if lengths != {cartan_dim}:
            raise serializers.ValidationError(
                {'weights': 'every weight must have %d components' % cartan_dim}
            )
        attrs['cartan_dim'] = cartan_dim
        return attrs

    def create(self, validated_data):
        try:
            return WeightModel(
                cartan_dim=validated_data['cartan_dim'],
                weights=tuple(tuple(w) for w in validated_data['weights']),
                label=validated_data.get('label', ''),
            )
        except DomainValidationError as exc:
            raise serializers.ValidationError(exc.messages)
