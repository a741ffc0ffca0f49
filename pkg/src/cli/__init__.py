# -*- coding: utf-8 -*-
"""
命令行前端与基准测试
"""

from .job import EXIT_CODES, JobSpec, Report, parse_json, render, render_human, render_json
from .runner import load_problem, run
from .bench import bench, format_table, load_manifest, run_bench, write_results

__all__ = [
    'EXIT_CODES', 'JobSpec', 'Report', 'parse_json', 'render', 'render_human', 'render_json',
    'load_problem', 'run',
    'bench', 'format_table', 'load_manifest', 'run_bench', 'write_results',
]
