requirements = [
    ## Computation ##
    "numpy",
    ## Utilities ##
    "luckydonald-utils",
    "typeguard"
]
