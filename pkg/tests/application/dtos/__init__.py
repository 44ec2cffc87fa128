# Report DTO tests
