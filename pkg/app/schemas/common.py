from typing import Any, Generic, TypeVar

from pydantic import BaseModel


T = TypeVar("T")


class ResponseModel(BaseModel, Generic[T]):
    """通用响应模型"""
    success: bool = True
    data: T | None = None


class ErrorDetail(BaseModel):
    """错误详情"""
    code: str
    message: str
    details: list[dict[str, Any]] | None = None


class ErrorResponse(BaseModel):
    """错误响应"""
    success: bool = False
    error: ErrorDetail
