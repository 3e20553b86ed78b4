"""Tests for ris_secrecy.utils.json_utils and ris_secrecy.utils.misc."""

import json
import math

import numpy as np
import pytest

from ris_secrecy.channel import PhaseModel, V2VScenario
from ris_secrecy.utils import hash_sha256, json_dumps_compact, json_dumps_pretty, json_loads


class TestJsonLoads:

    def test_strict_json(self):
        assert json_loads('{"a": 1}') == {"a": 1}

    def test_json5_fallback(self):
        text = '{\n  // grid\n  n_elements: [4, 8],\n  tx_snr_db: 60,\n}'
        assert json_loads(text) == {"n_elements": [4, 8], "tx_snr_db": 60}

    def test_fenced_block(self):
        assert json_loads('```json\n{"a": 2}\n```') == {"a": 2}

    def test_invalid(self):
        with pytest.raises(ValueError):
            json_loads('{"a": ')


class TestJsonDumps:

    def test_models_and_enums(self):
        sc = V2VScenario(n_elements=4, tx_snr=1.0)
        data = json.loads(json_dumps_compact({'scenario': sc, 'phase': PhaseModel.UNIFORM_ERROR}))
        assert data['scenario']['n_elements'] == 4
        assert data['phase'] == 'uniform_error'

    def test_numpy_values(self):
        data = json.loads(json_dumps_compact({'x': np.float64(0.5), 'v': np.arange(3)}))
        assert data == {'x': 0.5, 'v': [0, 1, 2]}

    def test_pretty(self):
        assert json_dumps_pretty({'a': 1}) == '{\n  "a": 1\n}'

    def test_nan_written_as_json5_literal(self):
        assert math.isnan(json_loads(json_dumps_compact({'x': math.nan}))['x'])


class TestHashSha256:

    def test_deterministic(self):
        assert hash_sha256("hello") == hash_sha256("hello")
        assert hash_sha256("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"

    def test_different_inputs_different_hashes(self):
        assert hash_sha256("a") != hash_sha256("b")
