# Shared kernel tests package