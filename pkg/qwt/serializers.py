from rest_framework import serializers

from .builders import PREP_STYLES, VARIANTS
from .circuit import BorrowRecord, Circuit, Gate, GateCostReport, GateKind, Register, RegisterLayout
from .exceptions import LayoutError, UnknownFilterError
from .filters import get_filter, load_filter_file
from .lowering import STRATEGIES
from .models import CheckRecord, GateCountRecord, VerificationRun


class RegisterSerializer(serializers.Serializer):
    name = serializers.CharField(max_length=32)
    size = serializers.IntegerField(min_value=0)
    role = serializers.ChoiceField(choices=Register.ROLES, default="ancilla")


class GateSerializer(serializers.Serializer):
    kind = serializers.CharField()
    targets = serializers.ListField(child=serializers.IntegerField(min_value=0), allow_empty=False)
    controls = serializers.ListField(child=serializers.IntegerField(min_value=0), default=list)
    polarity = serializers.ListField(child=serializers.IntegerField(min_value=0, max_value=1), default=list)
    params = serializers.ListField(child=serializers.FloatField(), default=list)
    dagger = serializers.BooleanField(default=False)

    def validate_kind(self, value):
        try:
            return GateKind(value)
        except ValueError:
            raise serializers.ValidationError(f"Unknown gate kind '{value}'.")

    def validate(self, data):
        """Controls and targets must be disjoint and every control needs a polarity flag."""
        overlap = set(data["targets"]) & set(data["controls"])
        if overlap:
            raise serializers.ValidationError(f"Qubits {sorted(overlap)} are both control and target.")
        if data["polarity"] and len(data["polarity"]) != len(data["controls"]):
            raise serializers.ValidationError("Polarity must list one flag per control.")
        return data


class BorrowRecordSerializer(serializers.Serializer):
    start = serializers.IntegerField(min_value=0)
    stop = serializers.IntegerField(min_value=0)
    qubits = serializers.ListField(child=serializers.IntegerField(min_value=0))


class CircuitSerializer(serializers.Serializer):
    """JSON circuit document: the layout first, then the gate array."""

    layout = RegisterSerializer(many=True, source="layout.registers")
    gates = GateSerializer(many=True)
    borrowed = BorrowRecordSerializer(many=True, default=list)

    def validate_layout(self, value):
        names = [r["name"] for r in value]
        if len(set(names)) != len(names):
            raise serializers.ValidationError("Register names must be unique.")
        return value

    def validate(self, data):
        width = sum(r["size"] for r in data["layout"]["registers"])
        for position, gate in enumerate(data["gates"]):
            outside = [q for q in gate["targets"] + gate["controls"] if q >= width]
            if outside:
                raise serializers.ValidationError(
                    f"Gate {position} ({gate['kind']}) touches qubits {outside} outside a {width}-qubit layout."
                )
        for record in data["borrowed"]:
            if record["start"] > record["stop"] or record["stop"] > len(data["gates"]):
                raise serializers.ValidationError(f"Borrow span {record['start']}..{record['stop']} is out of range.")
        try:
            data["circuit"] = self._build(data)
        except LayoutError as e:
            raise serializers.ValidationError(str(e))
        return data

    def _build(self, data):
        layout = RegisterLayout(tuple(Register(**r) for r in data["layout"]["registers"]))
        gates = tuple(
            Gate(g["kind"], g["targets"], g["controls"], g["polarity"], g["params"], g["dagger"])
            for g in data["gates"]
        )
        borrowed = tuple(BorrowRecord(r["start"], r["stop"], tuple(r["qubits"])) for r in data["borrowed"])
        return Circuit(layout, gates, borrowed)

    def create(self, validated_data):
        return validated_data["circuit"]


class GateCostReportSerializer(serializers.Serializer):
    not_gates = serializers.IntegerField(min_value=0)
    cnot = serializers.IntegerField(min_value=0)
    toffoli = serializers.IntegerField(min_value=0)
    h = serializers.IntegerField(min_value=0)
    ry = serializers.IntegerField(min_value=0)
    swap = serializers.IntegerField(min_value=0)
    cz = serializers.IntegerField(min_value=0)
    z = serializers.IntegerField(min_value=0)
    ancilla_count = serializers.IntegerField(min_value=0)
    work_count = serializers.IntegerField(min_value=0)
    borrowed_count = serializers.IntegerField(min_value=0)
    total_elementary = serializers.IntegerField(read_only=True)

    def create(self, validated_data):
        return GateCostReport(**validated_data)


class RunConfigSerializer(serializers.Serializer):
    """Options shared by the management commands, checked before anything is built."""

    filter = serializers.CharField(required=False, allow_null=True, default=None)
    filter_file = serializers.CharField(required=False, allow_null=True, default=None)
    n = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    d = serializers.IntegerField(min_value=1, default=1)
    variant = serializers.ChoiceField(choices=VARIANTS, default="single")
    prep_style = serializers.ChoiceField(choices=PREP_STYLES, default="sqrt")
    strategy = serializers.ChoiceField(choices=STRATEGIES, default="I")
    rounds = serializers.IntegerField(min_value=0, required=False, allow_null=True, default=None)
    hoist_shift = serializers.BooleanField(default=False)
    tolerance = serializers.FloatField(min_value=0, required=False, allow_null=True, default=None)

    def validate_filter(self, value):
        if value is None:
            return value
        try:
            get_filter(value)
        except UnknownFilterError as e:
            raise serializers.ValidationError(str(e))
        return value

    def validate(self, data):
        if data["filter"] and data["filter_file"]:
            raise serializers.ValidationError("Give either a filter name or a filter file, not both.")
        if data["variant"] == "single" and data["d"] != 1:
            raise serializers.ValidationError("A single-level transform has d = 1; pick --variant multilevel or packet.")
        # A filter file that fails validation is a verification failure, not a usage error.
        if data["filter_file"]:
            data["wavelet"] = load_filter_file(data["filter_file"])
        elif data["filter"]:
            data["wavelet"] = get_filter(data["filter"])
        else:
            data["wavelet"] = None
        wavelet, n, d = data["wavelet"], data["n"], data["d"]
        if wavelet is not None and n is not None and 2 ** (n - d + 1) < wavelet.order:
            raise serializers.ValidationError(
                f"Level {d} on n={n} leaves {n - d + 1} qubits, too few for {wavelet.name} (M={wavelet.order})."
            )
        return data


class CheckRecordSerializer(serializers.ModelSerializer):
    class Meta:
        model = CheckRecord
        fields = ['name', 'residual', 'tolerance', 'passed']


class VerificationRunSerializer(serializers.ModelSerializer):
    checks = CheckRecordSerializer(many=True, read_only=True)

    class Meta:
        model = VerificationRun
        fields = [
            'id', 'suite', 'filter_name', 'n', 'd', 'variant', 'prep_style',
            'passed', 'max_residual', 'failing_check', 'checks', 'created_at'
        ]
        read_only_fields = ['created_at']


class GateCountRecordSerializer(serializers.ModelSerializer):
    class Meta:
        model = GateCountRecord
        fields = [
            'id', 'variant', 'filter_name', 'n', 'd', 'prep_style', 'strategy',
            'counts', 'ancilla_count', 'work_count', 'borrowed_count', 'total', 'created_at'
        ]
        read_only_fields = ['created_at']
