n = int(input())
arr = list(map(int, input().split()))
arr = sorted(arr)
answer = 0
for i in range(1, n):
    answer = max(answer, arr[i] - arr[i - 1])
print(answer)
