"""Tests for Superfinance MCP."""
