# -*- coding: utf-8 -*-
"""
基准清单验收测试（需要求解器）

几秒内可完成的行默认运行，其余行标记为 slow；预期超时的行不在这里运行。
"""

import pytest

from src.cli.bench import run_row

from conftest import benchmark_params


@pytest.mark.parametrize("row, budget", benchmark_params())
def test_benchmark_row(row, budget):
    result = run_row(row, budget)
    assert result["match"], (
        f"{row['name']}: 预期 {result['expected']} {result['expected_k']}，"
        f"实际 {result['verdict']} {result['k']} {result['message']}"
    )
