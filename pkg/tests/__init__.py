# Test modules for the positroid toolkit
