# Report serialization tests
