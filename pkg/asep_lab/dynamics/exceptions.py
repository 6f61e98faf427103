class NonConvergence(ArithmeticError):
    """The uniformization series did not reach its tail bound within the term budget."""

    def __init__(self, terms, budget):
        self.terms = terms
        self.budget = budget
        super().__init__(f'uniformization needs {terms} terms, the budget is {budget}')
