# -*- coding: utf-8 -*-
"""
任务校验模块
检查单个验证任务与基准清单的合法性
"""

import pandas as pd
from typing import List, Tuple

from .errors import JobSpecError
from .logger import get_logger

logger = get_logger(__name__)

MODES = ("wp", "ert")
VERDICTS = ("ind", "ref", "exhausted", "timeout", "error")
MANIFEST_COLUMNS = ("name", "program", "pre")


class JobValidator:
    """任务验证器"""

    def __init__(self):
        self.logger = logger

    def job_errors(self, job) -> List[str]:
        """
        收集任务描述中的问题

        Args:
            job: JobSpec

        Returns:
            List[str]: 错误信息列表，空表示合法
        """
        errors = []

        if job.mode not in MODES:
            errors.append(f"未知模式: {job.mode}")

        # ert 模式的后期望固定为 0
        if job.mode == "ert" and job.post not in (None, ""):
            errors.append("ert 模式不接受显式后期望 --post")

        if job.mode == "wp" and job.post in (None, ""):
            errors.append("wp 模式需要后期望 --post")

        if not job.pre:
            errors.append("缺少候选上界 --pre")

        if job.deadline is not None and job.deadline <= 0:
            errors.append(f"deadline 必须为正: {job.deadline}")

        for field_name in ("max_k", "max_n"):
            value = getattr(job, field_name)
            if value is not None and value <= 0:
                errors.append(f"{field_name} 必须为正: {value}")

        return errors

    def validate_job(self, job) -> None:
        """
        Raises:
            JobSpecError: 任务描述不合法
        """
        errors = self.job_errors(job)
        if errors:
            raise JobSpecError("; ".join(errors))

    def validate_manifest(self, df: pd.DataFrame) -> Tuple[pd.DataFrame, pd.DataFrame]:
        """
        把清单行分割为有效与无效两部分（向量化）

        Args:
            df: 每行一个基准变体

        Returns:
            Tuple[pd.DataFrame, pd.DataFrame]: (有效行, 无效行)
        """
        if df.empty:
            return df, pd.DataFrame()

        valid_mask = pd.Series([True] * len(df), index=df.index)

        # 必填列
        for column in MANIFEST_COLUMNS:
            if column not in df.columns:
                self.logger.warning(f"清单缺少列 {column}")
                return df.iloc[0:0].copy(), df.copy()
            valid_mask &= df[column].notna() & (df[column].astype(str).str.strip() != "")

        if 'mode' in df.columns:
            valid_mask &= df['mode'].isin(MODES)

            if 'post' in df.columns:
                has_post = df['post'].notna() & (df['post'].astype(str).str.strip() != "")
                valid_mask &= ~((df['mode'] == 'ert') & has_post)
                valid_mask &= ~((df['mode'] == 'wp') & ~has_post)

        if 'budget' in df.columns:
            valid_mask &= df['budget'].isna() | (pd.to_numeric(df['budget'], errors='coerce') > 0)

        if 'expected' in df.columns:
            valid_mask &= df['expected'].isna() | df['expected'].isin(VERDICTS)

        valid_df = df[valid_mask].copy()
        invalid_df = df[~valid_mask].copy()

        total = len(df)
        invalid_count = len(invalid_df)
        if invalid_count > 0:
            self.logger.warning(
                f"清单校验完成: 有效 {total - invalid_count}/{total}，"
                f"无效 {invalid_count}: {', '.join(invalid_df['name'].astype(str)) if 'name' in invalid_df else ''}"
            )

        return valid_df, invalid_df


__all__ = ['JobValidator', 'MODES', 'VERDICTS']
