# Character domain tests
