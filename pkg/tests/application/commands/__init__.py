# Run configuration tests
