# Presentation layer tests package
