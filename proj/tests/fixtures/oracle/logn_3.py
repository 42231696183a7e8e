def power(b, e):
    if e == 0:
        return 1
    half = power(b, e // 2)
    if e % 2 == 1:
        return half * half * b % 1000007
    return half * half % 1000007


b, e = map(int, input().split())
print(power(b, e))
