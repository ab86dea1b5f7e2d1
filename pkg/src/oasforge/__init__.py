"""Static OpenAPI 3 description generator for Spring Boot source trees."""

__version__ = "0.1.0"
