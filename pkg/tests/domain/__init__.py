# Domain layer tests package