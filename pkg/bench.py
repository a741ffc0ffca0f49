# -*- coding: utf-8 -*-
"""
Loop-Sentinel - 基准测试

用法：
    python bench.py benchmarks/wp.toml
    python bench.py benchmarks/ert.toml --jobs 4 --include-timeouts

结果表打印到终端，同时以 CSV 与 JSON 写入 results/
"""

import argparse
import sys
from pathlib import Path

# 添加项目根目录到路径
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.cli.bench import bench
from src.config import BenchConfig
from src.utils.errors import SentinelError
from src.utils.logger import get_logger, set_level

logger = get_logger(__name__)


def parse_args(argv=None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="按清单运行验证基准并汇总成表")
    parser.add_argument("manifest", help="TOML 清单")
    parser.add_argument("--jobs", type=int, default=BenchConfig.DEFAULT_JOBS, help="并行行数")
    parser.add_argument("--include-timeouts", action="store_true", help="同时运行标记为预期超时的行")
    parser.add_argument("--solver", default=None, help="求解器可执行文件")
    parser.add_argument("--solver-arg", action="append", default=None, dest="solver_args",
                        help="求解器参数，可重复")
    parser.add_argument("--output-dir", default=str(BenchConfig.RESULT_DIR), help="结果目录")
    parser.add_argument("-v", "--verbose", action="store_true", help="控制台显示 DEBUG 日志")
    parser.add_argument("-q", "--quiet", action="store_true", help="控制台只显示警告与错误")
    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    if args.verbose or args.quiet:
        set_level("DEBUG" if args.verbose else "WARNING")
    try:
        _, exit_code = bench(args.manifest, args.jobs, args.include_timeouts,
                             args.solver, args.solver_args, args.output_dir)
    except (SentinelError, OSError) as e:
        logger.error(f"基准无法运行: {e}")
        print(f"错误: {e}", file=sys.stderr)
        return 3
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
