# Library modules for positroid combinatorics
