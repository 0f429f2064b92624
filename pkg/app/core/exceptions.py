class AppException(Exception):
    """应用基础异常"""

    code: str = "APP_ERROR"
    exit_code: int = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class GaussParseError(AppException):
    """Gauss 码解析错误"""
    code = "GAUSS_PARSE_ERROR"

    def __init__(self, detail: str = "Malformed Gauss code"):
        super().__init__(detail)


class UnknownLabelError(AppException):
    """未知交叉点标签"""
    code = "UNKNOWN_LABEL"

    def __init__(self, detail: str = "Unknown crossing label"):
        super().__init__(detail)


class DiagramError(AppException):
    """图表结构无效"""
    code = "INVALID_DIAGRAM"

    def __init__(self, detail: str = "Invalid knot diagram"):
        super().__init__(detail)


class InapplicableMoveError(AppException):
    """移动无法应用"""
    code = "INAPPLICABLE_MOVE"

    def __init__(self, detail: str = "Move site does not match the diagram"):
        super().__init__(detail)


class CommutationError(AppException):
    """自同构不交换"""
    code = "COMMUTATION_VIOLATION"

    def __init__(self, detail: str = "Automorphisms do not commute"):
        super().__init__(detail)


class RankMismatchError(AppException):
    """秩不匹配"""
    code = "RANK_MISMATCH"

    def __init__(self, detail: str = "Automorphism rank does not match the diagram"):
        super().__init__(detail)


class InvalidAutomorphismError(AppException):
    """逆像验证失败"""
    code = "INVALID_AUTOMORPHISM"

    def __init__(self, detail: str = "Images and inverse images are not mutually inverse"):
        super().__init__(detail)


class BudgetExceededError(AppException):
    """计算预算超出"""
    code = "BUDGET_EXCEEDED"

    def __init__(self, detail: str = "Computation budget exceeded"):
        super().__init__(detail)


class FormalSyntaxError(AppException):
    """形式字语法错误"""
    code = "FORMAL_SYNTAX_ERROR"

    def __init__(self, detail: str = "Malformed formal word"):
        super().__init__(detail)


class UnknownOperatorError(AppException):
    """未声明的算子符号"""
    code = "UNKNOWN_OPERATOR"

    def __init__(self, detail: str = "Operator symbol is not in the alphabet"):
        super().__init__(detail)


class NotFoundException(AppException):
    """资源未找到"""
    code = "NOT_FOUND"

    def __init__(self, detail: str = "Resource not found"):
        super().__init__(detail)

