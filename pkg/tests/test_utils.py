import yaml

import utils
from algebra.poly import t_power


def test_dump_yaml_keeps_order_and_plain_types():
    text = utils.dump_yaml({"suite": "moy", "ns": (2, 3), "ok": True})
    assert text.splitlines()[0] == "suite: moy"
    assert yaml.safe_load(text) == {"suite": "moy", "ns": [2, 3], "ok": True}


def test_dump_yaml_renders_unknown_values_as_text():
    loaded = yaml.safe_load(utils.dump_yaml({"value": t_power(-1) + t_power(2), "labels": frozenset({3, 1})}))
    assert loaded == {"value": "t^-1 + t^2", "labels": [1, 3]}


def test_file_sink_is_replaced(tmp_path, monkeypatch):
    monkeypatch.setattr(utils, "LOG_DIR", tmp_path)
    first = utils.configure_file_logging("first.log")
    first_id = utils._file_sink_id
    second = utils.configure_file_logging("second.log")
    assert first == tmp_path / "first.log"
    assert second == tmp_path / "second.log"
    assert utils._file_sink_id != first_id
    utils.logger.remove(utils._file_sink_id)
    monkeypatch.setattr(utils, "_file_sink_id", None)
