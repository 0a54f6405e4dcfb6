"""
JSON documents for channels, plans, constellations, simulation reports and
regions.
"""
from rest_framework import serializers
from rest_framework.renderers import JSONRenderer

from sdof_lab.exceptions import DomainError
from sdof_lab.model import FAMILIES, IC, ChannelInstance, ChannelKind
from sdof_lab.utils import format_rational


def render_json(data):
    """Deterministic, indented JSON text."""
    return JSONRenderer().render(data, renderer_context={"indent": 2}).decode("utf-8")


class StreamField(serializers.Field):
    def to_representation(self, value):
        return value.label


class ChannelKindSerializer(serializers.Serializer):
    family = serializers.ChoiceField(choices=FAMILIES)
    size = serializers.IntegerField(min_value=1)


class ChannelInstanceSerializer(serializers.Serializer):
    kind = ChannelKindSerializer()
    h = serializers.JSONField()
    g = serializers.ListField(child=serializers.FloatField())
    noise_var = serializers.ListField(child=serializers.FloatField())
    seed = serializers.IntegerField(required=False, allow_null=True)

    def validate(self, attrs):
        kind = attrs["kind"]
        try:
            kind = ChannelKind(kind["family"], kind["size"])
            h = attrs["h"]
            if kind.family == IC:
                h = tuple(tuple(float(v) for v in row) for row in h)
            else:
                h = tuple(float(v) for v in h)
            instance = ChannelInstance(
                kind=kind,
                h=h,
                g=tuple(attrs["g"]),
                noise_var=tuple(attrs["noise_var"]),
                seed=attrs.get("seed"),
            )
        except (DomainError, TypeError, ValueError) as e:
            raise serializers.ValidationError(str(e))
        return {"instance": instance}

    def create(self, validated_data):
        return validated_data["instance"]


def channel_from_json(data):
    serializer = ChannelInstanceSerializer(data=data)
    if not serializer.is_valid():
        raise DomainError("Invalid channel document: {}".format(serializer.errors))
    return serializer.save()


class PlanTermSerializer(serializers.Serializer):
    stream = StreamField()
    coeff = serializers.FloatField()
    expr = serializers.CharField()


class TxInputSerializer(serializers.Serializer):
    tx_index = serializers.IntegerField()
    terms = PlanTermSerializer(many=True)


class SignalPlanSerializer(serializers.Serializer):
    scheme = serializers.CharField()
    size = serializers.IntegerField()
    streams = serializers.ListField(child=StreamField())
    tx = TxInputSerializer(many=True)


class DimensionSerializer(serializers.Serializer):
    coeff = serializers.FloatField()
    streams = serializers.ListField(child=StreamField())
    expr = serializers.CharField()


class ReceiverConstellationSerializer(serializers.Serializer):
    receiver = serializers.CharField()
    dims = DimensionSerializer(many=True)


class DecodeResultSerializer(serializers.Serializer):
    error_rate = serializers.FloatField()
    error_bound = serializers.FloatField()
    d_min = serializers.FloatField()
    errors = serializers.IntegerField()
    trials = serializers.IntegerField()


class SimReportSerializer(serializers.Serializer):
    P = serializers.FloatField()
    Q = serializers.IntegerField()
    a = serializers.FloatField()
    error_rate = serializers.FloatField()
    error_bound = serializers.FloatField(allow_null=True)
    rate_lb_bits = serializers.FloatField()
    leakage_bits = serializers.FloatField(allow_null=True)
    secrecy_rate_bits = serializers.FloatField(allow_null=True)
    normalized_rate = serializers.FloatField()


class BlindSpanReportSerializer(serializers.Serializer):
    jamming_streams = serializers.IntegerField()
    eve_dims = serializers.IntegerField()
    eve_jamming_dims = serializers.IntegerField()
    legit_dims = serializers.IntegerField()
    legit_jamming_dims = serializers.IntegerField()
    spans_entire_space = serializers.BooleanField(read_only=True)


class RegionSpecSerializer(serializers.Serializer):
    name = serializers.CharField()
    n = serializers.IntegerField()
    rows = serializers.SerializerMethodField()

    def get_rows(self, spec):
        return [
            {
                "label": str(spec.labels[i]),
                "coeffs": [format_rational(c) for c in spec.H[i]],
                "rhs": format_rational(spec.h[i]),
                "text": spec.row_text(i),
            }
            for i in range(spec.m)
        ]


class ExtremePointSetSerializer(serializers.Serializer):
    points = serializers.SerializerMethodField()

    def get_points(self, point_set):
        return [[format_rational(c) for c in p] for p in point_set.sorted()]
