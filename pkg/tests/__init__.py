# Test package for domain model validation