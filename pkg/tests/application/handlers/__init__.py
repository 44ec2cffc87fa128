# Command dispatch tests
