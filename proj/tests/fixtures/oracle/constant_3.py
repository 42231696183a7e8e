def digit_score(x):
    score = 0
    for d in [1, 2, 3, 4]:
        if x % d == 0:
            score += d
        else:
            score -= 1
    return score


n = int(input())
print(digit_score(n))
