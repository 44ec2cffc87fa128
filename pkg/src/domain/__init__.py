# Domain layer package for eisenlab
