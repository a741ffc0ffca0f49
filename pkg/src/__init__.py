# -*- coding: utf-8 -*-
"""
Loop-Sentinel - 概率循环上界验证工具

对单循环 pGCL 程序的最弱前期望（wp）与期望运行时间（ert）候选上界，
并行运行格上的 k-归纳与有界模型检查，所有判定交给外部 SMT 求解器。
"""

__version__ = "0.1.0"
__author__ = "Loop-Sentinel Team"

# 确保可以正确导入子模块
import sys
from pathlib import Path

# 将项目根目录添加到Python路径
project_root = Path(__file__).parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))
