# -*- coding: utf-8 -*-
"""
Loop-Sentinel - 概率循环上界验证

用法：
    python verify.py benchmarks/programs/geo.pgcl --post "c" --pre "c + 1"
    python verify.py benchmarks/programs/ert/ber.pgcl --ert --pre "2 * (n - x)" --json

退出码：0 = ind，1 = ref，2 = exhausted / timeout，3 = error
"""

import argparse
import sys
from pathlib import Path

# 添加项目根目录到路径
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.cli.job import JobSpec, render
from src.cli.runner import run
from src.config import EngineConfig, SolverConfig
from src.utils.logger import get_logger, set_level

logger = get_logger(__name__)


def parse_args(argv=None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="用 k-归纳与 BMC 验证概率循环的 wp/ert 上界")
    parser.add_argument("program", help="pGCL 程序文件")
    parser.add_argument("--post", default=None, help="后期望 g（wp 模式）")
    parser.add_argument("--pre", required=True, help="候选上界 f")
    parser.add_argument("--ert", action="store_true", help="期望运行时间模式（后期望固定为 0）")
    parser.add_argument("--max-k", type=int, default=None, help="k-归纳检查次数上限")
    parser.add_argument("--max-n", type=int, default=None, help="BMC 展开上限")
    parser.add_argument("--timeout", type=float, default=EngineConfig.DEFAULT_DEADLINE, help="deadline（秒）")
    parser.add_argument("--solver", default=None, help=f"求解器可执行文件（默认 {SolverConfig.PATH}）")
    parser.add_argument("--solver-arg", action="append", default=None, dest="solver_args",
                        help="求解器参数，可重复")
    parser.add_argument("--emit-smt2", default=None, help="把发送给求解器的脚本写入该目录")
    parser.add_argument("--json", action="store_true", help="以 JSON 输出报告")
    parser.add_argument("--symbolic", action="store_true", help="使用符号期望领域代替增量编码")
    parser.add_argument("--no-closure", action="store_true",
                        help="不对函数实例做闭包（编码不可靠，仅用于对照）")
    parser.add_argument("-v", "--verbose", action="store_true", help="控制台显示 DEBUG 日志")
    parser.add_argument("-q", "--quiet", action="store_true", help="控制台只显示警告与错误")
    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    if args.verbose or args.quiet:
        set_level("DEBUG" if args.verbose else "WARNING")
    job = JobSpec(
        program=args.program,
        pre=args.pre,
        post=args.post,
        mode="ert" if args.ert else "wp",
        max_k=args.max_k,
        max_n=args.max_n,
        deadline=args.timeout,
        solver_path=args.solver,
        solver_args=args.solver_args,
        emit_smt2=args.emit_smt2,
        output="json" if args.json else "human",
        close_instances=not args.no_closure,
        symbolic=args.symbolic,
    )
    report = run(job)
    print(render(report, job.output))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
