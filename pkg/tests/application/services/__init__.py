# Application service tests
