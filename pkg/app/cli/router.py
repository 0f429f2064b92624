from app.cli import diagram, group, verify
from app.cli.options import CommandRouter


cli_router = CommandRouter()

cli_router.include_router(diagram.router)
cli_router.include_router(group.router)
cli_router.include_router(verify.router)
