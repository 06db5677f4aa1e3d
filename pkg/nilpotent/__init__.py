"""Exact analysis of 2-step nilpotent Lie algebras and their closed 2-forms."""
