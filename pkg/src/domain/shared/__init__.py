# Shared kernel: exceptions used across eisenlab domain packages
