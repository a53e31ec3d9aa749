import logging

from django.core.exceptions import ValidationError as DomainValidationError
from rest_framework import serializers

from rdm.serializers import ComplexMatrixField
from statespace.models import SystemShape
from weights.serializers import WeightModelSerializer

from .models import MarginalFamily

logger = logging.getLogger(__name__)


class PairMarginalSerializer(serializers.Serializer):
    p = serializers.IntegerField(min_value=1)
    q = serializers.IntegerField(min_value=1)
    matrix = ComplexMatrixField()

    def validate(self, attrs):
        if attrs['p'] == attrs['q']:
            raise serializers.ValidationError('p and q must differ')
        return attrs


class MarginalFamilySerializer(serializers.Serializer):
    """Pair marginals with 1-based particle labels.

    Non-Hermitian or indefinite matrices are rejected; disagreeing traces are
    only logged, since the certificate reads diagonals alone.
    """
    model = WeightModelSerializer()
    N = serializers.IntegerField(min_value=2)
    pairs = PairMarginalSerializer(many=True, allow_empty=False)

    def validate(self, attrs):
        seen = set()
        for pair in attrs['pairs']:
            key = frozenset((pair['p'], pair['q']))
            if max(key) > attrs['N']:
                raise serializers.ValidationError({'pairs': 'pair {%d,%d} exceeds N' % (pair['p'], pair['q'])})
            if key in seen:
                raise serializers.ValidationError({'pairs': 'pair {%d,%d} listed twice' % (pair['p'], pair['q'])})
            seen.add(key)
        return attrs

    def create(self, validated_data):
        model = WeightModelSerializer().create(validated_data['model'])
        try:
            family = MarginalFamily(
                shape=SystemShape(model=model, n=validated_data['N']),
                entries={(pair['p'] - 1, pair['q'] - 1): pair['matrix'] for pair in validated_data['pairs']},
            )
        except DomainValidationError as exc:
            raise serializers.ValidationError(exc.messages)
        problems = family.problems()
        fatal = [message for code, message in problems if code != 'trace_mismatch']
        if fatal:
            raise serializers.ValidationError({'pairs': fatal})
        for code, message in problems:
            logger.warning('marginal family: %s', message)
        return family

    def to_representation(self, instance):
        field = ComplexMatrixField()
        return {
            'model': WeightModelSerializer(instance.shape.model).data,
            'N': instance.shape.n,
            'pairs': [
                {'p': p + 1, 'q': q + 1, 'matrix': field.to_representation(matrix)}
                for (p, q), matrix in instance.entries.items()
            ],
        }
