diagram = "U U"
