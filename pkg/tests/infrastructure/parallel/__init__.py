# Thread pool tests
