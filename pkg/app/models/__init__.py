# Domain models and the exception hierarchy
