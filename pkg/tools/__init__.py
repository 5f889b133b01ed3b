"""Tool modules for the ns-bound MCP server."""

from tools.bound import register_bound_tools
from tools.gotzmann import register_gotzmann_tools
from tools.ideal import register_ideal_tools
from tools.verify import register_verify_tools


def register_all_tools(server):
    """Register all tools with the FastMCP server."""
    register_ideal_tools(server)
    register_bound_tools(server)
    register_gotzmann_tools(server)
    register_verify_tools(server)


__all__ = ["register_all_tools"]
