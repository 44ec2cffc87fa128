# Command line for eisenlab
