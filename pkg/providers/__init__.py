# Export providers package
