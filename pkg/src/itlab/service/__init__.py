"""HTTP face of the laboratory: pydantic schemas and the FastAPI app."""
